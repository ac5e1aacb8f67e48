#pragma once

// Exhaustive instance-level check of the main equivalence over all
// quasi-orders on [n]: round-trips for random canonical maps when every
// central class has two or more elements, the cube counterexample otherwise.

#include <smakit/counterexample.hpp>
#include <smakit/recovery.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace smakit {

struct TheoremCheckConfig {
  std::size_t n = 3;
  FieldDescriptor field = FieldDescriptor::rational();
  std::uint64_t seed = 0;
  std::size_t samples_per_map = 100;
  std::size_t maps_per_quasi_order = 3;

  void validate() const {
    if (n < 1 || n > 4) throw std::invalid_argument("theorem-check supports 1 <= n <= 4");
    if (samples_per_map < 1 || maps_per_quasi_order < 1) throw std::invalid_argument("counts must be >= 1");
  }
};

/// "pass", "fail: <reason>" or "n/a: <reason>".
struct Verdict {
  enum class State { Pass, Fail, NotApplicable } state = State::Pass;
  std::string note;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {State::Fail, std::move(why)}; }
  static Verdict not_applicable(std::string why) { return {State::NotApplicable, std::move(why)}; }
  bool failed() const { return state == State::Fail; }
  std::string to_string() const {
    switch (state) {
      case State::Pass: return "pass";
      case State::Fail: return "FAIL (" + note + ")";
      case State::NotApplicable: return "n/a (" + note + ")";
    }
    return "?";
  }
};

struct MapVerdicts {
  ProductKind mode;
  std::size_t index;
  Verdict round_trip, additivity, preservation;
};

struct CounterexampleVerdicts {
  /// Set when the construction was refused; the other fields are then unused.
  std::optional<std::string> refused;
  Verdict preserves_standard, preserves_circle, injective;
  /// Pass means a non-additivity witness was found.
  Verdict non_additive;
  std::string witness;
};

struct QuasiOrderReport {
  std::size_t index;
  QuasiOrder order;
  CentralPartition classes;
  bool condition_i = false;
  std::vector<MapVerdicts> maps;
  std::optional<CounterexampleVerdicts> counterexample;

  std::size_t failures() const {
    std::size_t k = 0;
    for (const auto& m : maps) k += m.round_trip.failed() + m.additivity.failed() + m.preservation.failed();
    if (counterexample && !counterexample->refused)
      k += counterexample->preserves_standard.failed() + counterexample->preserves_circle.failed() +
           counterexample->injective.failed() + counterexample->non_additive.failed();
    return k;
  }
};

struct RunReport {
  TheoremCheckConfig config;
  std::vector<QuasiOrderReport> rows;

  std::size_t condition_i_count() const {
    std::size_t k = 0;
    for (const auto& r : rows) k += r.condition_i;
    return k;
  }
  std::size_t failed_verdicts() const {
    std::size_t k = 0;
    for (const auto& r : rows) k += r.failures();
    return k;
  }
  bool passed() const { return failed_verdicts() == 0; }

  std::string to_string() const {
    std::ostringstream out;
    out << "theorem-check n=" << config.n << " field=" << config.field.tag() << " seed=" << config.seed
        << " samples=" << config.samples_per_map << " maps=" << config.maps_per_quasi_order << "\n";
    std::size_t refused = 0, counterexamples = 0, maps = 0;
    for (const auto& r : rows) {
      out << "#" << r.index + 1 << " rho^x=" << format_pairs(r.order.strict_part()) << " classes=" << r.classes.to_string()
          << " |Q|=" << r.classes.classes.size() << " min|C|=" << r.classes.min_class_size()
          << " cond(i)=" << (r.condition_i ? "yes" : "no") << "\n";
      for (const auto& m : r.maps) {
        ++maps;
        out << "  " << mode_name(m.mode) << " map " << m.index + 1 << ": round-trip " << m.round_trip.to_string()
            << ", additive " << m.additivity.to_string() << ", preserve " << m.preservation.to_string() << "\n";
      }
      if (r.counterexample) {
        const auto& c = *r.counterexample;
        if (c.refused) {
          ++refused;
          out << "  counterexample: n/a (" << *c.refused << ")\n";
        } else {
          ++counterexamples;
          out << "  counterexample: preserve mul " << c.preserves_standard.to_string() << ", preserve njordan "
              << c.preserves_circle.to_string() << ", injective " << c.injective.to_string() << ", non-additive "
              << c.non_additive.to_string();
          if (!c.witness.empty()) out << " witness " << c.witness;
          out << "\n";
        }
      }
    }
    out << "summary: quasi-orders " << rows.size() << ", cond(i) " << condition_i_count() << ", maps checked " << maps
        << ", counterexamples " << counterexamples << ", refused " << refused << ", failed verdicts " << failed_verdicts()
        << "\n";
    out << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
  }
};

namespace detail {

inline Verdict from_check(const CheckResult& r) {
  if (r.passed) return Verdict::pass();
  return Verdict::fail(r.detail);
}

inline MapVerdicts check_canonical_round_trip(const Sma& a, ProductKind mode, std::size_t index,
                                              const TheoremCheckConfig& c, std::uint64_t item_seed) {
  MapVerdicts v{mode, index, {}, {}, {}};
  Rng rng(item_seed);
  const CanonicalMapSpec spec = random_canonical_spec(a, mode, rng);
  EvaluableMap m = as_evaluable(spec);
  if (mode == ProductKind::Diamond) {
    // A Diamond-preserving black box: X -> phi(2X)/2 for a Circle-mode spec.
    const Scalar two = Scalar::from_int(a.field(), 2);
    const Scalar half = Scalar::from_fraction(a.field(), 1, 2);
    m.fn = [spec, two, half](const Matrix& x) { return half * spec(two * x); };
    m.declared = ProductKind::Diamond;
  }
  try {
    const RecoveryResult r = recover_canonical(m, a, mode, derive_seed(item_seed, 1), c.samples_per_map);
    (void)r;
  } catch (const RecoveryFailure& e) {
    v.round_trip = Verdict::fail(e.what());
  }
  v.additivity = from_check(verify_additivity(m, c.samples_per_map, derive_seed(item_seed, 2)));
  v.preservation = from_check(verify_product_preservation(m, mode, c.samples_per_map, derive_seed(item_seed, 3)));
  return v;
}

inline CounterexampleVerdicts check_counterexample(const Sma& a, const TheoremCheckConfig& c, std::uint64_t item_seed) {
  CounterexampleVerdicts v;
  std::optional<EvaluableMap> m;
  try {
    m = build_counterexample(a);
  } catch (const CounterexampleRefused& e) {
    v.refused = e.what();
    return v;
  }
  v.preserves_standard = from_check(verify_product_preservation(*m, ProductKind::Standard, c.samples_per_map, derive_seed(item_seed, 1)));
  v.preserves_circle = from_check(verify_product_preservation(*m, ProductKind::Circle, c.samples_per_map, derive_seed(item_seed, 2)));
  v.injective = from_check(verify_injectivity_on_samples(*m, std::max<std::size_t>(2, c.samples_per_map), derive_seed(item_seed, 3)));
  const CheckResult add = verify_additivity(*m, c.samples_per_map, derive_seed(item_seed, 4));
  if (add.passed) {
    v.non_additive = Verdict::fail("no additivity witness found");
  } else {
    v.witness = "X=" + add.x->to_inline_string() + " Y=" + add.y->to_inline_string();
  }
  return v;
}

}  // namespace detail

inline QuasiOrderReport check_quasi_order(const QuasiOrder& q, std::size_t index, const TheoremCheckConfig& c) {
  const Sma a(q, c.field);
  QuasiOrderReport r{index, q, a.classes(), a.classes().no_singleton_class(), {}, std::nullopt};
  if (r.condition_i) {
    const ProductKind modes[] = {ProductKind::Standard, ProductKind::Circle, ProductKind::Diamond};
    for (std::size_t mi = 0; mi < 3; ++mi)
      for (std::size_t k = 0; k < c.maps_per_quasi_order; ++k)
        r.maps.push_back(detail::check_canonical_round_trip(a, modes[mi], k, c, derive_seed(c.seed, index, mi, k)));
  } else {
    r.counterexample = detail::check_counterexample(a, c, derive_seed(c.seed, index, 7));
  }
  return r;
}

inline RunReport theorem_check(const TheoremCheckConfig& c) {
  c.validate();
  RunReport report{c, {}};
  const auto orders = enumerate_quasi_orders(c.n);
  for (std::size_t k = 0; k < orders.size(); ++k) report.rows.push_back(check_quasi_order(orders[k], k, c));
  return report;
}

}  // namespace smakit
