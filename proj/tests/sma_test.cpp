#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace smakit;
using oracle::order;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rational();

Matrix e(std::size_t n, int i, int j, const FieldDescriptor& f = kQ) {
  return Matrix::unit(n, f, static_cast<Index>(i - 1), static_cast<Index>(j - 1));
}

const std::vector<FieldDescriptor>& fields() {
  static const std::vector<FieldDescriptor> fs{FieldDescriptor::rational(), FieldDescriptor::gaussian(),
                                               FieldDescriptor::prime(5)};
  return fs;
}

}  // namespace

TEST(Contains, KnownValues) {
  const Sma chain(QuasiOrder::chain(2), kQ);
  EXPECT_TRUE(chain.contains(e(2, 1, 2)));
  EXPECT_FALSE(chain.contains(e(2, 2, 1)));
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& q : enumerate_quasi_orders(n)) EXPECT_TRUE(Sma(q, kQ).contains(Matrix::identity(n, kQ)));
  EXPECT_THROW(chain.contains(Matrix::identity(3, kQ)), DimensionError);
  EXPECT_THROW(chain.contains(Matrix::identity(2, FieldDescriptor::gaussian())), FieldError);
}

TEST(Products, KnownValues) {
  const Matrix half = Scalar::from_fraction(kQ, 1, 2) * (e(2, 1, 1) + e(2, 2, 2));
  EXPECT_EQ(product(ProductKind::Circle, e(2, 1, 2), e(2, 2, 1)), half);
  EXPECT_TRUE(product(ProductKind::Diamond, e(2, 1, 2), e(2, 1, 2)).is_zero());
  EXPECT_EQ(product(ProductKind::Standard, e(2, 1, 1), e(2, 1, 2)), e(2, 1, 2));
  EXPECT_EQ(parse_mode("mul"), ProductKind::Standard);
  EXPECT_EQ(parse_mode("jordan"), ProductKind::Diamond);
  EXPECT_EQ(parse_mode("njordan"), ProductKind::Circle);
  EXPECT_THROW(parse_mode("lie"), ParseError);
}

TEST(DiagonalIdempotent, KnownValues) {
  const Sma a(QuasiOrder::full(3), kQ);
  EXPECT_EQ(diagonal_idempotent(a, {0, 1, 2}), Matrix::identity(3, kQ));
  EXPECT_TRUE(diagonal_idempotent(a, {}).is_zero());
  EXPECT_EQ(diagonal_idempotent(a, {0, 2}), e(3, 1, 1) + e(3, 3, 3));
}

TEST(CenterBasis, KnownValues) {
  EXPECT_EQ(center_basis(Sma(order(3, {{1, 2}}), kQ)), (std::vector<Matrix>{e(3, 1, 1) + e(3, 2, 2), e(3, 3, 3)}));
  EXPECT_EQ(center_basis(Sma(QuasiOrder::full(2), kQ)), (std::vector<Matrix>{Matrix::identity(2, kQ)}));
  EXPECT_EQ(center_basis(Sma(QuasiOrder::diagonal(2), kQ)), (std::vector<Matrix>{e(2, 1, 1), e(2, 2, 2)}));
}

TEST(CenterDimension, KnownValues) {
  EXPECT_EQ(center_dimension_oracle(Sma(order(3, {{1, 2}}), kQ)), 2u);
  EXPECT_EQ(center_dimension_oracle(Sma(QuasiOrder::full(3), kQ)), 1u);
  EXPECT_EQ(center_dimension_oracle(Sma(QuasiOrder::diagonal(4), kQ)), 4u);
}

TEST(CenterDimension, MatchesClassCountOnEveryOrder) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& q : enumerate_quasi_orders(n)) {
      const Sma a(q, kQ);
      EXPECT_EQ(a.center_basis().size(), center_dimension_oracle(a)) << q.to_string();
    }
}

TEST(CenterBasis, ElementsAreCentral) {
  Rng rng(8);
  for (const auto& q : enumerate_quasi_orders(3)) {
    const Sma a(q, kQ);
    for (const auto& z : a.center_basis())
      for (int k = 0; k < 5; ++k) {
        const Matrix x = a.random_element(rng, 5);
        EXPECT_EQ(z * x, x * z);
      }
  }
}

TEST(TransitiveMap, KnownValues) {
  const QuasiOrder chain = QuasiOrder::chain(3);
  auto g_with = [&](long g13) {
    return TransitiveMap::from_strict_values(
        chain, kQ, {{{0, 1}, Scalar::from_int(kQ, 2)}, {{1, 2}, Scalar::from_int(kQ, 3)}, {{0, 2}, Scalar::from_int(kQ, g13)}});
  };
  EXPECT_TRUE(validate_transitive_map(g_with(6)).valid);
  const CocycleCheck bad = validate_transitive_map(g_with(5));
  ASSERT_FALSE(bad.valid);
  EXPECT_EQ(bad.witness->at(0), IndexPair(0, 1));
  EXPECT_EQ(bad.witness->at(1), IndexPair(1, 2));

  const Scalar c = Scalar::from_fraction(kQ, -7, 3);
  const auto full = TransitiveMap::from_strict_values(QuasiOrder::full(2), kQ, {{{0, 1}, c}, {{1, 0}, c.inverse()}});
  EXPECT_TRUE(validate_transitive_map(full).valid);
  const auto wrong = TransitiveMap::from_strict_values(QuasiOrder::full(2), kQ, {{{0, 1}, c}, {{1, 0}, c}});
  EXPECT_FALSE(validate_transitive_map(wrong).valid);
}

TEST(TransitiveMap, Errors) {
  const QuasiOrder chain = QuasiOrder::chain(2);
  EXPECT_THROW(TransitiveMap::from_strict_values(chain, kQ, {{{1, 0}, Scalar::one(kQ)}}), TransitiveMapError);
  EXPECT_THROW(validate_transitive_map(TransitiveMap::from_strict_values(chain, kQ, {})), TransitiveMapError);
  EXPECT_THROW(validate_transitive_map(TransitiveMap::from_strict_values(chain, kQ, {{{0, 1}, Scalar::zero(kQ)}})),
               TransitiveMapError);
}

TEST(InducedAutomorphism, KnownValues) {
  const QuasiOrder chain = QuasiOrder::chain(3);
  const auto g = TransitiveMap::from_strict_values(
      chain, kQ, {{{0, 1}, Scalar::from_int(kQ, 2)}, {{1, 2}, Scalar::from_int(kQ, 3)}, {{0, 2}, Scalar::from_int(kQ, 6)}});
  EXPECT_EQ(apply_induced_automorphism(g, e(3, 1, 3)), Scalar::from_int(kQ, 6) * e(3, 1, 3));
}

TEST(InducedAutomorphism, InverseAndMultiplicativity) {
  Rng rng(21);
  for (const auto& f : fields()) {
    const Sma a(order(4, {{1, 2}, {2, 3}, {4, 3}}), f);
    const TransitiveMap g = TransitiveMap::random(a.order(), f, rng, 5);
    for (int k = 0; k < 100; ++k) {
      const Matrix x = a.random_element(rng, 5);
      const Matrix y = a.random_element(rng, 5);
      EXPECT_EQ(apply_induced_automorphism(g, apply_induced_automorphism(g, x), true), x);
      EXPECT_EQ(apply_induced_automorphism(g, x * y), apply_induced_automorphism(g, x) * apply_induced_automorphism(g, y));
    }
  }
}

TEST(TransitiveMap, DiagonalIsOne) {
  Rng rng(4);
  for (const auto& q : enumerate_quasi_orders(3))
    for (const auto& f : fields()) {
      const TransitiveMap g = TransitiveMap::random(q, f, rng, 4);
      EXPECT_TRUE(validate_transitive_map(g).valid);
      for (Index i = 0; i < 3; ++i) EXPECT_TRUE(g(i, i).is_one());
    }
}

TEST(RandomElements, DeterministicAndSupported) {
  const Sma a(order(4, {{1, 2}, {3, 4}, {4, 3}}), kQ);
  EXPECT_EQ(random_element(a, 17, 5), random_element(a, 17, 5));
  EXPECT_NE(random_element(a, 17, 5), random_element(a, 18, 5));
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const Matrix x = a.random_element(rng, 5);
    for (const auto& p : x.support()) EXPECT_TRUE(a.order().contains(p));
  }
  for (const auto& f : fields()) {
    const Sma b(QuasiOrder::chain(4), f);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Matrix x = random_invertible(b, s, 3);
      EXPECT_FALSE(oracle::leibniz_determinant(x).is_zero());
      EXPECT_EQ(determinant(x), oracle::leibniz_determinant(x));
    }
  }
}

TEST(Determinant, AgreesWithLeibniz) {
  Rng rng(12);
  for (const auto& f : fields())
    for (int k = 0; k < 100; ++k) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
      const Sma a(QuasiOrder::full(n), f);
      Matrix x = a.random_element(rng, 3);
      if (rng.coin()) x.set(0, 0, Scalar::zero(f));
      EXPECT_EQ(determinant(x), oracle::leibniz_determinant(x));
      const auto inv = inverse(x);
      EXPECT_EQ(inv.has_value(), !oracle::leibniz_determinant(x).is_zero());
      if (inv) {
        EXPECT_EQ(x * *inv, Matrix::identity(n, f));
      }
    }
}

// Properties of A_rho under all three products, over every field.
TEST(SmaProperty, ClosedUnderProducts) {
  Rng rng(31);
  for (const auto& f : fields())
    for (int k = 0; k < 200; ++k) {
      const Sma a(oracle::random_order(rng, static_cast<std::size_t>(rng.uniform(1, 5))), f);
      const Matrix x = a.random_element(rng, 4), y = a.random_element(rng, 4);
      for (auto kind : {ProductKind::Standard, ProductKind::Diamond, ProductKind::Circle})
        EXPECT_TRUE(a.contains(product(kind, x, y)));
    }
}

TEST(SmaProperty, CircleOfXWithItselfIsSquare) {
  Rng rng(32);
  for (const auto& f : fields())
    for (int k = 0; k < 100; ++k) {
      const Sma a(oracle::random_order(rng, 4), f);
      const Matrix x = a.random_element(rng, 4);
      EXPECT_EQ(product(ProductKind::Circle, x, x), x * x);
    }
}

TEST(SmaProperty, CentralBlockStructure) {
  Rng rng(33);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& q : enumerate_quasi_orders(n)) {
      const Sma a(q, kQ);
      const auto ps = a.center_basis();
      Matrix sum(n, kQ);
      for (std::size_t c = 0; c < ps.size(); ++c) {
        EXPECT_TRUE(is_idempotent(ps[c]));
        sum = sum + ps[c];
        for (std::size_t d = 0; d < ps.size(); ++d) {
          if (c == d) continue;
          EXPECT_TRUE((ps[c] * ps[d]).is_zero());
          const Matrix x = a.random_element(rng, 4);
          EXPECT_TRUE((ps[c] * x * ps[d]).is_zero());
        }
      }
      EXPECT_EQ(sum, Matrix::identity(n, kQ));
    }
}
