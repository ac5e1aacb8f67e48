#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace smakit;
using oracle::order;

namespace {

PairSet pairs1(std::initializer_list<std::pair<int, int>> ps) {
  PairSet out;
  for (auto [i, j] : ps) out.insert({static_cast<Index>(i - 1), static_cast<Index>(j - 1)});
  return out;
}

IndexSet set1(std::initializer_list<int> xs) {
  IndexSet out;
  for (int x : xs) out.push_back(static_cast<Index>(x - 1));
  return out;
}

}  // namespace

TEST(Validate, KnownValues) {
  EXPECT_NO_THROW(validate_quasi_order(2, pairs1({{1, 1}, {2, 2}, {1, 2}})));
  EXPECT_NO_THROW(validate_quasi_order(1, pairs1({{1, 1}})));
  try {
    validate_quasi_order(3, pairs1({{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 3}}));
    FAIL() << "expected a transitivity error";
  } catch (const QuasiOrderError& e) {
    EXPECT_EQ(e.kind(), QuasiOrderError::Kind::TransitivityViolation);
    ASSERT_EQ(e.witness().size(), 3u);
    EXPECT_EQ(e.witness()[0], IndexPair(0, 1));
    EXPECT_EQ(e.witness()[1], IndexPair(1, 2));
    EXPECT_EQ(e.witness()[2], IndexPair(0, 2));
  }
}

TEST(Validate, Errors) {
  try {
    validate_quasi_order(2, pairs1({{1, 1}, {1, 2}}));
    FAIL();
  } catch (const QuasiOrderError& e) {
    EXPECT_EQ(e.kind(), QuasiOrderError::Kind::MissingReflexivePair);
    EXPECT_EQ(e.witness().front(), IndexPair(1, 1));
  }
  try {
    validate_quasi_order(2, pairs1({{1, 1}, {2, 2}, {1, 3}}));
    FAIL();
  } catch (const QuasiOrderError& e) {
    EXPECT_EQ(e.kind(), QuasiOrderError::Kind::IndexOutOfRange);
  }
}

TEST(Closure, KnownValues) {
  EXPECT_EQ(transitive_reflexive_closure(3, pairs1({{1, 2}, {2, 3}})).pairs(),
            pairs1({{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 3}, {1, 3}}));
  EXPECT_EQ(transitive_reflexive_closure(2, {}).pairs(), pairs1({{1, 1}, {2, 2}}));
  EXPECT_EQ(transitive_reflexive_closure(3, pairs1({{1, 2}, {2, 1}})).pairs(),
            pairs1({{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 1}}));
}

TEST(Closure, IsIdempotentAndMinimal) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    PairSet gen;
    for (int d = 0; d < 4; ++d)
      gen.insert({static_cast<Index>(rng.uniform(0, n - 1)), static_cast<Index>(rng.uniform(0, n - 1))});
    const QuasiOrder c = QuasiOrder::closure(n, gen);
    EXPECT_EQ(QuasiOrder::closure(n, c.pairs()), c);
    EXPECT_NO_THROW(QuasiOrder::validate(n, c.pairs()));
    for (const auto& p : gen) EXPECT_TRUE(c.contains(p));
    // Minimality: every quasi-order containing gen contains c.
    for (const auto& other : enumerate_quasi_orders(std::min<std::size_t>(n, 3))) {
      if (other.size() != n) break;
      bool has_gen = true;
      for (const auto& p : gen) has_gen = has_gen && other.contains(p);
      if (!has_gen) continue;
      for (const auto& p : c.pairs()) EXPECT_TRUE(other.contains(p));
    }
  }
}

TEST(StrictPart, KnownValues) {
  EXPECT_EQ(strict_part(QuasiOrder::chain(2)), pairs1({{1, 2}}));
  EXPECT_TRUE(strict_part(QuasiOrder::diagonal(3)).empty());
  EXPECT_EQ(strict_part(QuasiOrder::full(2)), pairs1({{1, 2}, {2, 1}}));
}

TEST(ImageAndPreimage, KnownValues) {
  EXPECT_EQ(image_and_preimage(QuasiOrder::chain(2), 0), std::make_pair(set1({1, 2}), set1({1})));
  EXPECT_EQ(image_and_preimage(QuasiOrder::diagonal(3), 1), std::make_pair(set1({2}), set1({2})));
  EXPECT_EQ(image_and_preimage(QuasiOrder::full(2), 1), std::make_pair(set1({1, 2}), set1({1, 2})));
}

TEST(CentralClasses, KnownValues) {
  EXPECT_EQ(central_classes(order(3, {{1, 2}})).classes, (std::vector<IndexSet>{set1({1, 2}), set1({3})}));
  EXPECT_EQ(central_classes(QuasiOrder::full(2)).classes, (std::vector<IndexSet>{set1({1, 2})}));
  const QuasiOrder q = order(3, {{1, 2}, {3, 2}});
  EXPECT_EQ(central_classes(q).classes, (std::vector<IndexSet>{set1({1, 2, 3})}));
  EXPECT_EQ(central_classes(q).classes, oracle::union_find_classes(q));
}

TEST(CentralClasses, MatchUnionFindOnEveryOrder) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& q : enumerate_quasi_orders(n)) {
      const CentralPartition part = central_classes(q);
      EXPECT_EQ(part.classes, oracle::union_find_classes(q)) << q.to_string();
      for (std::size_t c = 0; c < part.classes.size(); ++c)
        for (Index i : part.classes[c]) EXPECT_EQ(part.class_of[i], c);
    }
}

TEST(Enumerate, CountsMatchBruteForce) {
  const std::size_t expected[] = {1, 4, 29, 355};
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto orders = enumerate_quasi_orders(n);
    EXPECT_EQ(orders.size(), expected[n - 1]);
    EXPECT_EQ(orders.size(), oracle::count_quasi_orders(n));
    std::set<PairSet> distinct;
    for (const auto& q : orders) distinct.insert(q.pairs());
    EXPECT_EQ(distinct.size(), orders.size());
  }
  EXPECT_THROW(enumerate_quasi_orders(0), QuasiOrderError);
  EXPECT_THROW(enumerate_quasi_orders(5), QuasiOrderError);
}

TEST(Saturation, KnownValues) {
  const QuasiOrder chain = QuasiOrder::chain(3);
  const SaturationReport all = saturation_check(chain, pairs1({{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_TRUE(all.hypotheses_hold);
  EXPECT_TRUE(all.containment_holds);

  const SaturationReport one = saturation_check(chain, pairs1({{1, 2}}));
  EXPECT_FALSE(one.hypotheses_hold);
  ASSERT_TRUE(one.required.has_value());
  EXPECT_EQ(*one.required, IndexPair(0, 2));

  const SaturationReport small = saturation_check(QuasiOrder::chain(2), pairs1({{1, 2}}));
  EXPECT_TRUE(small.hypotheses_hold);
  EXPECT_TRUE(small.containment_holds);

  EXPECT_THROW(saturation_check(chain, {}), std::invalid_argument);
  EXPECT_THROW(saturation_check(chain, pairs1({{2, 1}})), std::invalid_argument);
}

// Every subset S of rho^x on n <= 3: the library's hypothesis verdict agrees
// with a direct check, and whenever the hypotheses hold containment holds.
TEST(Saturation, ExhaustiveAgainstOracle) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& q : enumerate_quasi_orders(n)) {
      EXPECT_TRUE(oracle::saturation_holds_exhaustively(q)) << q.to_string();
      const PairSet strict = q.strict_part();
      const std::vector<IndexPair> ps(strict.begin(), strict.end());
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ps.size()); ++mask) {
        PairSet s;
        for (std::size_t k = 0; k < ps.size(); ++k)
          if ((mask >> k) & 1) s.insert(ps[k]);
        bool hyp = true;
        for (const auto& [i, j] : s) {
          for (const auto& [a, b] : strict)
            if ((a == i || b == j) && !s.count({a, b})) hyp = false;
          if (q.contains(j, i) && !s.count({j, i})) hyp = false;
        }
        const SaturationReport r = saturation_check(q, s);
        EXPECT_EQ(r.hypotheses_hold, hyp) << q.to_string() << " S=" << format_pairs(s);
        if (r.hypotheses_hold) {
          EXPECT_TRUE(r.containment_holds);
        }
      }
    }
}

TEST(Saturation, OracleHoldsOnEveryOrderOfSizeFour) {
  for (const auto& q : enumerate_quasi_orders(4)) EXPECT_TRUE(oracle::saturation_holds_exhaustively(q)) << q.to_string();
}
