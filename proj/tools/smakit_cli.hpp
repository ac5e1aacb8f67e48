#pragma once

// Command-line front end. cli_dispatch is kept separate from main() so the
// tests can drive it with captured streams.

#include <smakit/smakit.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace smakit::cli {

enum ExitCode : int { kPass = 0, kViolated = 1, kInputError = 2 };

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("SMAKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("SMAKIT_SEED is not an integer: '") + env + "'");
    }
  }
  return 0;
}

inline void print_check(std::ostream& out, const std::string& label, const CheckResult& r) {
  out << label << ": " << (r.passed ? "pass" : "FAIL") << " (" << r.checks << " checks)\n";
  if (!r.passed) {
    out << "  " << r.detail << "\n";
    if (r.x) out << "  X = " << r.x->to_inline_string() << "\n";
    if (r.y) out << "  Y = " << r.y->to_inline_string() << "\n";
  }
}

inline std::string format_recovery_report(const RecoveryResult& r) {
  std::ostringstream out;
  out << "recovered canonical form (input mode " << mode_name(r.input_kind) << ")\n";
  if (r.input_kind == ProductKind::Diamond) out << "data below is for psi(X) = 2 phi(X/2); phi(X) = psi(2X)/2\n";
  out << "--- begin .cmap ---\n" << format_canonical_spec(r.spec) << "--- end .cmap ---\n";
  out << "--- begin T0 .mat ---\n" << format_matrix(r.spec.t()) << "--- end T0 .mat ---\n";
  for (const auto& c : r.classes) {
    out << "class " << format_index_set(c.members) << ": dagger " << dagger_name(c.dagger) << ", omega "
        << (c.omega ? c.omega->name() : std::string("unclassified")) << ", additivity "
        << (c.additivity_certified ? "certified" : "not certified (singleton class)")
        << ", additive on samples " << (c.additive_on_samples ? "yes" : "no") << "\n";
    out << "  samples:";
    for (const auto& [x, y] : c.omega_samples) out << " " << x.to_string() << "->" << y.to_string();
    out << "\n";
  }
  out << "singleton classes: " << format_index_set(r.singleton_classes) << "\n";
  out << "residual: 0 on " << r.residual_checks << " random inputs\n";
  return out.str();
}

inline int run_analyze(const std::string& qo_path, bool close, const std::string& field_tag, std::ostream& out) {
  const QuasiOrder q = parse_quasi_order(read_text_file(qo_path), close);
  const Sma a(q, FieldDescriptor::parse(field_tag));
  const std::size_t by_classes = a.center_basis().size();
  const std::size_t by_solve = center_dimension_oracle(a);
  out << "n: " << q.size() << "\n";
  out << "rho^x: " << format_pairs(q.strict_part()) << "\n";
  out << "central classes: " << a.classes().to_string() << "\n";
  out << "|Q|: " << a.classes().classes.size() << ", min |C|: " << a.classes().min_class_size() << "\n";
  out << "center dimension: " << by_classes << " (classes) = " << by_solve << " (commutant solve)"
      << (by_classes == by_solve ? "" : "  MISMATCH") << "\n";
  out << "condition (i) (no singleton class): " << (a.classes().no_singleton_class() ? "yes" : "no") << "\n";
  return by_classes == by_solve ? kPass : kViolated;
}

inline int run_enumerate(std::size_t n, std::ostream& out) {
  const auto orders = enumerate_quasi_orders(n);
  out << "quasi-orders on [" << n << "]: " << orders.size() << "\n";
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const CentralPartition p = central_classes(orders[k]);
    out << "#" << k + 1 << " rho^x=" << format_pairs(orders[k].strict_part()) << " classes=" << p.to_string() << "\n";
  }
  return kPass;
}

inline int run_synthesize(const std::string& qo_path, bool close, const std::string& field_tag, std::uint64_t seed,
                          const std::string& mode, const std::string& output, std::ostream& out) {
  const Sma a(parse_quasi_order(read_text_file(qo_path), close), FieldDescriptor::parse(field_tag));
  Rng rng(seed);
  const std::string text = format_canonical_spec(random_canonical_spec(a, parse_mode(mode), rng));
  if (output.empty() || output == "-") {
    out << text;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw FormatError(0, "cannot write '" + output + "'");
    f << text;
    out << "wrote " << output << "\n";
  }
  return kPass;
}

struct LoadedMap {
  Sma algebra;
  CanonicalMapSpec spec;
};

inline LoadedMap load_map(const std::string& qo_path, bool close, const std::string& map_path) {
  const QuasiOrder q = parse_quasi_order(read_text_file(qo_path), close);
  CanonicalMapSpec spec = parse_canonical_spec(read_text_file(map_path), q);
  return {spec.algebra(), std::move(spec)};
}

inline int run_recover(const std::string& qo_path, bool close, const std::string& map_path, const std::string& mode,
                       std::size_t samples, std::uint64_t seed, std::ostream& out) {
  const LoadedMap lm = load_map(qo_path, close, map_path);
  const ProductKind kind = mode.empty() ? lm.spec.mode() : parse_mode(mode);
  try {
    const RecoveryResult r = recover_canonical(as_evaluable(lm.spec), lm.algebra, kind, seed, samples);
    out << format_recovery_report(r);
    return kPass;
  } catch (const RecoveryFailure& e) {
    out << "recovery failed at step '" << step_name(e.step()) << "': " << e.what() << "\n";
    for (std::size_t k = 0; k < e.witnesses().size(); ++k)
      out << "  witness " << k + 1 << ": " << e.witnesses()[k].to_inline_string() << "\n";
    return kViolated;
  }
}

inline int run_verify(const std::string& qo_path, bool close, const std::string& map_path, const std::string& mode,
                      const std::string& check, std::size_t samples, std::uint64_t seed, std::ostream& out) {
  const LoadedMap lm = load_map(qo_path, close, map_path);
  const EvaluableMap m = as_evaluable(lm.spec);
  CheckResult r;
  if (check == "preserve") {
    const ProductKind kind = mode.empty() ? lm.spec.mode() : parse_mode(mode);
    r = verify_product_preservation(m, kind, samples, seed);
    print_check(out, "preserve " + mode_name(kind), r);
  } else if (check == "additive") {
    r = verify_additivity(m, samples, seed);
    print_check(out, "additive", r);
  } else {
    r = verify_injectivity_on_samples(m, std::max<std::size_t>(samples, 2), seed);
    print_check(out, "injective", r);
  }
  return r.passed ? kPass : kViolated;
}

/// Preservation and injectivity must pass and additivity must fail.
inline int report_non_additive_map(const EvaluableMap& m, std::size_t samples, std::uint64_t seed, std::ostream& out) {
  const CheckResult mul = verify_product_preservation(m, ProductKind::Standard, samples, derive_seed(seed, 1));
  const CheckResult njordan = verify_product_preservation(m, ProductKind::Circle, samples, derive_seed(seed, 2));
  const CheckResult inj = verify_injectivity_on_samples(m, std::max<std::size_t>(samples, 2), derive_seed(seed, 3));
  const CheckResult add = verify_additivity(m, samples, derive_seed(seed, 4));
  print_check(out, "preserve mul", mul);
  print_check(out, "preserve njordan", njordan);
  print_check(out, "injective on samples", inj);
  if (add.passed) {
    out << "additive: no witness found in " << add.checks << " checks (expected a witness)\n";
  } else {
    out << "additive: fails as expected\n  " << add.detail << "\n  X = " << add.x->to_inline_string()
        << "\n  Y = " << add.y->to_inline_string() << "\n";
  }
  return mul.passed && njordan.passed && inj.passed && !add.passed ? kPass : kViolated;
}

inline int run_counterexample(const std::string& qo_path, bool close, const std::string& field_tag, std::size_t samples,
                              std::uint64_t seed, std::ostream& out) {
  const Sma a(parse_quasi_order(read_text_file(qo_path), close), FieldDescriptor::parse(field_tag));
  const EvaluableMap m = build_counterexample(a);
  out << "map: " << m.name << " " << format_index_set(a.classes().singleton_indices()) << "\n";
  return report_non_additive_map(m, samples, seed, out);
}

inline int run_theorem_check(const TheoremCheckConfig& c, std::ostream& out) {
  const RunReport r = theorem_check(c);
  out << r.to_string();
  return r.passed() ? kPass : kViolated;
}

inline int run_example36(std::size_t samples, std::uint64_t seed, std::ostream& out) {
  const NonSmaExample ex = non_sma_cube_example();
  out << "algebra: " << ex.algebra.name() << ", basis size " << ex.algebra.basis().size() << "\n";
  out << "E13 in algebra: " << (ex.algebra.contains(Matrix::unit(5, ex.algebra.field(), 0, 2)) ? "yes" : "no") << "\n";
  return report_non_additive_map(ex.map, samples, seed, out);
}

inline int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"smakit: structural matrix algebras, canonical maps and their recovery", "smakit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::size_t samples = 100, maps = 3, n = 3;
  bool close = false;
  std::string qo, map_path, mode, field = "Q", output, check;

  auto* analyze = app.add_subcommand("analyze", "central classes, center dimension and rho^x of a quasi-order");
  analyze->add_option("qo", qo, ".qo file")->required();
  analyze->add_flag("--close", close, "take the reflexive-transitive closure");
  analyze->add_option("--field", field, "Q, Qi or F<p>");

  auto* enumerate = app.add_subcommand("enumerate", "list all quasi-orders on [n]");
  enumerate->add_option("--n", n, "1..4")->required()->check(CLI::Range(1, 4));

  auto* synthesize = app.add_subcommand("synthesize", "write a random canonical map");
  synthesize->add_option("--qo", qo)->required();
  synthesize->add_flag("--close", close);
  synthesize->add_option("--field", field);
  synthesize->add_option("--seed", seed);
  synthesize->add_option("--mode", mode, "mul, jordan or njordan")->required();
  synthesize->add_option("-o,--output", output, ".cmap output file (stdout if omitted)");

  auto* recover = app.add_subcommand("recover", "recover the canonical form of a map");
  recover->add_option("--qo", qo)->required();
  recover->add_flag("--close", close);
  recover->add_option("--map", map_path, ".cmap file")->required();
  recover->add_option("--mode", mode);
  recover->add_option("--samples", samples)->check(CLI::PositiveNumber);
  recover->add_option("--seed", seed);

  auto* verify = app.add_subcommand("verify", "check preservation, additivity or injectivity");
  verify->add_option("--qo", qo)->required();
  verify->add_flag("--close", close);
  verify->add_option("--map", map_path)->required();
  verify->add_option("--mode", mode);
  verify->add_option("--check", check)->required()->check(CLI::IsMember({"preserve", "additive", "injective"}));
  verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);

  auto* counter = app.add_subcommand("counterexample", "cube map on the singleton central classes");
  counter->add_option("--qo", qo)->required();
  counter->add_flag("--close", close);
  counter->add_option("--field", field);
  counter->add_option("--samples", samples)->check(CLI::PositiveNumber);
  counter->add_option("--seed", seed);

  auto* tcheck = app.add_subcommand("theorem-check", "run the equivalence over every quasi-order on [n]");
  tcheck->add_option("--n", n)->required()->check(CLI::Range(1, 4));
  tcheck->add_option("--seed", seed);
  tcheck->add_option("--field", field);
  tcheck->add_option("--samples", samples)->check(CLI::PositiveNumber);
  tcheck->add_option("--maps", maps)->check(CLI::PositiveNumber);

  std::size_t ex_samples = 200;
  auto* ex36 = app.add_subcommand("example36", "the 5x5 non-SMA cube example");
  ex36->add_option("--samples", ex_samples)->check(CLI::PositiveNumber);
  ex36->add_option("--seed", seed);

  try {
    seed = default_seed();
    if (args.empty()) throw CLI::RequiredError("a subcommand");
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*analyze) return run_analyze(qo, close, field, out);
    if (*enumerate) return run_enumerate(n, out);
    if (*synthesize) return run_synthesize(qo, close, field, seed, mode, output, out);
    if (*recover) return run_recover(qo, close, map_path, mode, samples, seed, out);
    if (*verify) return run_verify(qo, close, map_path, mode, check, samples, seed, out);
    if (*counter) return run_counterexample(qo, close, field, samples, seed, out);
    if (*tcheck) {
      TheoremCheckConfig c;
      c.n = n;
      c.field = FieldDescriptor::parse(field);
      c.seed = seed;
      c.samples_per_map = samples;
      c.maps_per_quasi_order = maps;
      return run_theorem_check(c, out);
    }
    if (*ex36) return run_example36(ex_samples, seed, out);
  } catch (const CounterexampleRefused& e) {
    err << "refused: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << app.help();
  return kInputError;
}

}  // namespace smakit::cli
