#include <smakit/smakit.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace smakit;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rational();
const FieldDescriptor kQi = FieldDescriptor::gaussian();
const FieldDescriptor kF5 = FieldDescriptor::prime(5);

Scalar q(long num, long den = 1) { return Scalar::from_fraction(kQ, num, den); }

}  // namespace

TEST(ScalarArith, KnownValues) {
  EXPECT_EQ(scalar_arith(q(1, 2), q(1, 3), ScalarOp::Add), q(5, 6));
  EXPECT_EQ(scalar_arith(Scalar::gaussian(1, 1), Scalar::gaussian(1, -1), ScalarOp::Mul), Scalar::gaussian(2, 0));
  EXPECT_EQ(scalar_arith(Scalar::from_int(kF5, 3), Scalar::from_int(kF5, 4), ScalarOp::Mul), Scalar::from_int(kF5, 2));
}

TEST(ScalarArith, DivisionAndMismatch) {
  EXPECT_THROW(scalar_arith(q(1), q(0), ScalarOp::Div), DivisionByZero);
  EXPECT_THROW(scalar_arith(Scalar::zero(kF5) + Scalar::one(kF5), Scalar::zero(kF5), ScalarOp::Div), DivisionByZero);
  EXPECT_THROW(scalar_arith(q(1), Scalar::one(kQi), ScalarOp::Add), FieldError);
  EXPECT_EQ(scalar_arith(q(3, 4), q(-3, 2), ScalarOp::Div), q(-1, 2));
  EXPECT_EQ(scalar_arith(q(3, 4), q(1, 4), ScalarOp::Sub), q(1, 2));
  EXPECT_EQ(Scalar::gaussian(0, 1).inverse(), Scalar::gaussian(0, -1));
  EXPECT_EQ(Scalar::from_int(kF5, 2).inverse(), Scalar::from_int(kF5, 3));
}

TEST(ScalarArith, CanonicalForm) {
  EXPECT_EQ(q(2, 4), q(1, 2));
  EXPECT_EQ(q(3, -6).to_string(), "-1/2");
  EXPECT_EQ((q(1, 3) + q(2, 3)).to_string(), "1");
  EXPECT_EQ(Scalar::from_int(kF5, -1).to_string(), "4");
}

TEST(ScalarMap, KnownValues) {
  const ScalarMap conj(ScalarMapKind::Conjugation, kQi);
  const ScalarMap cube(ScalarMapKind::Cube, kQ);
  EXPECT_EQ(apply_scalar_map(conj, Scalar::gaussian(2, 3)), Scalar::gaussian(2, -3));
  EXPECT_EQ(apply_scalar_map(cube, q(-1, 2)), q(-1, 8));
  EXPECT_THROW(ScalarMap(ScalarMapKind::Conjugation, kQ), FieldError);
  EXPECT_THROW(ScalarMap(ScalarMapKind::Conjugation, kF5), FieldError);
  EXPECT_THROW(cube(Scalar::one(kQi)), FieldError);
}

TEST(ScalarMap, Classification) {
  EXPECT_TRUE(ScalarMap(ScalarMapKind::Identity, kQ).is_ring_endomorphism());
  EXPECT_TRUE(ScalarMap(ScalarMapKind::Conjugation, kQi).is_additive());
  EXPECT_FALSE(ScalarMap(ScalarMapKind::Cube, kQ).is_additive());
  EXPECT_EQ(ScalarMap::parse_kind("conj"), ScalarMapKind::Conjugation);
  EXPECT_THROW(ScalarMap::parse_kind("sqrt"), ParseError);
}

TEST(ScalarMap, CubeIsMultiplicativeOnRandomPairs) {
  Rng rng(11);
  const ScalarMap cube(ScalarMapKind::Cube, kQ);
  for (int k = 0; k < 100; ++k) {
    const Scalar x = random_scalar(rng, kQ, 9);
    const Scalar y = random_scalar(rng, kQ, 9);
    EXPECT_EQ(cube(x) * cube(y), cube(x * y));
  }
}

TEST(ScalarMap, CubeAdditivityWitness) {
  const ScalarMap cube(ScalarMapKind::Cube, kQ);
  const Scalar one = q(1);
  EXPECT_EQ(cube(one + one), q(8));
  EXPECT_NE(cube(one + one), cube(one) + cube(one));
}

TEST(EntrywiseMap, KnownValues) {
  Matrix x(2, kQi);
  x.set(0, 0, Scalar::gaussian(0, 1));
  x.set(1, 1, Scalar::gaussian(0, -1));
  Matrix expected(2, kQi);
  expected.set(0, 0, Scalar::gaussian(0, -1));
  expected.set(1, 1, Scalar::gaussian(0, 1));
  EXPECT_EQ(entrywise_map(ScalarMap(ScalarMapKind::Conjugation, kQi), x), expected);

  const Matrix d = Matrix::diagonal({q(2), q(3)});
  EXPECT_EQ(entrywise_map(ScalarMap(ScalarMapKind::Cube, kQ), d), Matrix::diagonal({q(8), q(27)}));
  EXPECT_EQ(entrywise_map(ScalarMap(ScalarMapKind::Identity, kQ), d), d);
  EXPECT_THROW(entrywise_map(ScalarMap(ScalarMapKind::Cube, kQi), d), FieldError);
}

TEST(ScalarGrammar, Parse) {
  EXPECT_EQ(parse_scalar("-3/4", kQ), q(-3, 4));
  EXPECT_EQ(parse_scalar("6/8", kQ), q(3, 4));
  EXPECT_EQ(parse_scalar("\xE2\x88\x92" "3/4", kQ), q(-3, 4));
  EXPECT_EQ(parse_scalar("1/2+2/3i", kQi), Scalar::gaussian(mpq_class(1, 2), mpq_class(2, 3)));
  EXPECT_EQ(parse_scalar("-1i", kQi), Scalar::gaussian(0, -1));
  EXPECT_EQ(parse_scalar("2" "\xE2\x88\x92" "1i", kQi), Scalar::gaussian(2, -1));
  EXPECT_EQ(parse_scalar("7", kQi), Scalar::gaussian(7, 0));
  EXPECT_EQ(parse_scalar("12", kF5), Scalar::from_int(kF5, 2));
  EXPECT_THROW(parse_scalar("1/0", kQ), ParseError);
  EXPECT_THROW(parse_scalar("abc", kQ), ParseError);
  EXPECT_THROW(parse_scalar("", kQ), ParseError);
  EXPECT_THROW(parse_scalar("1/2", kF5), ParseError);
}

TEST(ScalarGrammar, FormatRoundTrips) {
  Rng rng(5);
  for (const auto& f : {kQ, kQi, kF5}) {
    for (int k = 0; k < 200; ++k) {
      const Scalar s = random_scalar(rng, f, 50);
      EXPECT_EQ(parse_scalar(s.to_string(), f), s) << s.to_string();
    }
  }
  EXPECT_EQ(Scalar::gaussian(mpq_class(1, 2), mpq_class(-2, 3)).to_string(), "1/2-2/3i");
}

TEST(FieldTags, ParseAndReject) {
  EXPECT_EQ(FieldDescriptor::parse("Q"), kQ);
  EXPECT_EQ(FieldDescriptor::parse("Qi"), kQi);
  EXPECT_EQ(FieldDescriptor::parse("F5"), kF5);
  EXPECT_EQ(FieldDescriptor::parse("F7").tag(), "F7");
  EXPECT_THROW(FieldDescriptor::parse("F2"), FieldError);
  EXPECT_THROW(FieldDescriptor::parse("F9"), FieldError);
  EXPECT_THROW(FieldDescriptor::parse("R"), FieldError);
  EXPECT_FALSE(kF5.has_characteristic_zero());
}

// The inline int64 representation against GMP, including values that
// overflow into the big representation and back.
TEST(RationalProperty, AgreesWithGmp) {
  Rng rng(99);
  const long magnitudes[] = {10, 1L << 20, 1L << 40, (1L << 62) + 12345};
  for (long bound : magnitudes) {
    for (int k = 0; k < 500; ++k) {
      const long an = rng.uniform(-bound, bound), ad = rng.uniform(1, bound);
      const long bn = rng.uniform(-bound, bound), bd = rng.uniform(1, bound);
      const Rational a(an, ad), b(bn, bd);
      const mpq_class ma{mpz_class(an), mpz_class(ad)}, mb{mpz_class(bn), mpz_class(bd)};
      mpq_class ra = ma, rb = mb;
      ra.canonicalize();
      rb.canonicalize();
      EXPECT_EQ((a + b).to_mpq(), mpq_class(ra + rb));
      EXPECT_EQ((a - b).to_mpq(), mpq_class(ra - rb));
      EXPECT_EQ((a * b).to_mpq(), mpq_class(ra * rb));
      if (bn != 0) {
        EXPECT_EQ((a / b).to_mpq(), mpq_class(ra / rb));
      }
      const Rational back = (a * b) / b;
      if (bn != 0) {
        EXPECT_EQ(back, a);
        EXPECT_EQ(back.is_small(), a.is_small());
      }
    }
  }
}

TEST(RationalProperty, ExtremeValues) {
  const Rational big(std::numeric_limits<long>::max());
  const Rational sum = big + big;
  EXPECT_FALSE(sum.is_small());
  EXPECT_EQ(sum.to_mpq(), mpq_class(mpz_class(std::numeric_limits<long>::max()) * 2));
  EXPECT_TRUE((sum - big).is_small());
  EXPECT_EQ(sum - big, big);
  const Rational low(std::numeric_limits<long>::min());
  EXPECT_EQ((-low).to_mpq(), mpq_class(-mpz_class(std::numeric_limits<long>::min())));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(ScalarMapProperty, RingLawsOnRandomInputs) {
  Rng rng(2024);
  for (const auto& f : {kQ, kQi, kF5}) {
    std::vector<ScalarMap> maps{ScalarMap(ScalarMapKind::Identity, f), ScalarMap(ScalarMapKind::Cube, f)};
    if (f == kQi) maps.emplace_back(ScalarMapKind::Conjugation, f);
    for (const auto& m : maps) {
      EXPECT_EQ(m(Scalar::zero(f)), Scalar::zero(f));
      EXPECT_EQ(m(Scalar::one(f)), Scalar::one(f));
      for (int k = 0; k < 200; ++k) {
        const Scalar x = random_scalar(rng, f, 20), y = random_scalar(rng, f, 20);
        EXPECT_EQ(m(x * y), m(x) * m(y));
        if (m.is_additive()) {
          EXPECT_EQ(m(x + y), m(x) + m(y));
        }
      }
    }
  }
}

TEST(ScalarMapProperty, InjectiveOnThousandDistinctInputs) {
  Rng rng(77);
  for (const auto& f : {kQ, kQi}) {
    std::vector<ScalarMap> maps{ScalarMap(ScalarMapKind::Identity, f), ScalarMap(ScalarMapKind::Cube, f)};
    if (f == kQi) maps.emplace_back(ScalarMapKind::Conjugation, f);
    std::set<std::string> inputs;
    std::vector<Scalar> xs;
    while (xs.size() < 1000) {
      Scalar x = random_scalar(rng, f, 1000);
      if (inputs.insert(x.to_string()).second) xs.push_back(std::move(x));
    }
    for (const auto& m : maps) {
      std::set<std::string> images;
      for (const auto& x : xs) images.insert(m(x).to_string());
      EXPECT_EQ(images.size(), xs.size()) << m.name() << " over " << f.tag();
    }
  }
}
