#pragma once

// Black-box recovery of the canonical form of an injective map preserving
// the standard product or a Jordan product. The procedure follows the
// structure of the characterization step by step and aborts with a
// RecoveryFailure naming the step whose assertion failed.

#include <smakit/diagonalization.hpp>
#include <smakit/maps.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smakit {

/// Step identifiers, in execution order.
enum class RecoveryStep {
  DiagonalIdempotents,  // phi(E_ii) mutually orthogonal rank-one idempotents; T0
  SupportPreservation,  // psi(E_ij) supported in {i,j} x {i,j}
  MatrixUnitImages,     // psi(E_ij) proportional to E_ij or E_ji
  ClassOrientation,     // one orientation per class; none transposed when multiplicative
  Transitivity,         // g(i,j) g(j,k) = g(i,k)
  ScalarMaps,           // omega_C well defined, multiplicative, additive on |C| >= 2
  Residual,             // phi equals the recovered canonical map on samples
};

inline std::string step_name(RecoveryStep s) {
  switch (s) {
    case RecoveryStep::DiagonalIdempotents: return "diagonal-idempotents";
    case RecoveryStep::SupportPreservation: return "support-preservation";
    case RecoveryStep::MatrixUnitImages: return "matrix-unit-images";
    case RecoveryStep::ClassOrientation: return "class-orientation";
    case RecoveryStep::Transitivity: return "transitivity";
    case RecoveryStep::ScalarMaps: return "scalar-maps";
    case RecoveryStep::Residual: return "residual";
  }
  return {};
}

class RecoveryFailure : public std::runtime_error {
 public:
  RecoveryFailure(RecoveryStep step, const std::string& detail, std::vector<Matrix> witnesses = {})
      : std::runtime_error(step_name(step) + ": " + detail), step_(step), witnesses_(std::move(witnesses)) {}

  RecoveryStep step() const { return step_; }
  const std::vector<Matrix>& witnesses() const { return witnesses_; }

 private:
  RecoveryStep step_;
  std::vector<Matrix> witnesses_;
};

struct ClassRecovery {
  IndexSet members;
  DaggerOp dagger = DaggerOp::Identity;
  /// Catalog match; empty when the samples fit no catalog entry.
  std::optional<ScalarMap> omega;
  std::vector<std::pair<Scalar, Scalar>> omega_samples;
  /// |C| >= 2, so additivity of omega_C is forced rather than observed.
  bool additivity_certified = false;
  bool additive_on_samples = false;
};

struct RecoveryResult {
  /// For Diamond inputs this describes psi(X) = 2 phi(X/2), which preserves
  /// the normalized product; phi(X) = psi(2X)/2.
  CanonicalMapSpec spec;
  ProductKind input_kind;
  std::vector<ClassRecovery> classes;
  IndexSet singleton_classes;
  std::size_t residual_checks = 0;
};

/// The fixed test set for omega_C: 0, +-1, +-2, 1/2, 2/3, -3/5, 7, and on Qi
/// also +-i and 1+i. Over F_p, values whose denominator vanishes are dropped.
inline std::vector<Scalar> omega_test_set(const FieldDescriptor& f) {
  std::vector<Scalar> out;
  const std::pair<long, long> fractions[] = {{0, 1}, {1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {2, 3}, {-3, 5}, {7, 1}};
  for (const auto& [num, den] : fractions) {
    if (f.kind() == FieldKind::Prime && den % static_cast<long>(f.modulus()) == 0) continue;
    out.push_back(Scalar::from_fraction(f, num, den));
  }
  if (f.kind() == FieldKind::GaussianRational) {
    out.push_back(Scalar::gaussian(0, 1));
    out.push_back(Scalar::gaussian(0, -1));
    out.push_back(Scalar::gaussian(1, 1));
  }
  return out;
}

namespace detail {

/// Catalog candidates in matching order.
inline std::vector<ScalarMap> omega_catalog(const FieldDescriptor& f, bool include_cube) {
  std::vector<ScalarMap> out{ScalarMap(ScalarMapKind::Identity, f)};
  if (f.kind() == FieldKind::GaussianRational) out.emplace_back(ScalarMapKind::Conjugation, f);
  if (include_cube) out.emplace_back(ScalarMapKind::Cube, f);
  return out;
}

/// Index of the first column with a nonzero entry; x must be nonzero.
inline Index first_nonzero_column(const Matrix& x) {
  for (Index c = 0; c < x.size(); ++c)
    for (Index r = 0; r < x.size(); ++r)
      if (!x(r, c).is_zero()) return c;
  throw std::logic_error("first_nonzero_column: zero matrix");
}

}  // namespace detail

/// Recovers (T, g, omega_C, dagger_C) from evaluations of m on the SMA a,
/// given that m is claimed to be injective and to preserve `kind`.
inline RecoveryResult recover_canonical(const EvaluableMap& m, const Sma& a, ProductKind kind, std::uint64_t seed,
                                        std::size_t sample_count = 100) {
  const std::size_t n = a.size();
  const FieldDescriptor& field = a.field();
  const Scalar two = Scalar::from_int(field, 2);
  const Scalar half = Scalar::from_fraction(field, 1, 2);
  const auto unit = [&](Index i, Index j) { return Matrix::unit(n, field, i, j); };

  // Diamond-preserving maps are handled through psi(X) = 2 phi(X/2).
  const ProductKind working_kind = kind == ProductKind::Diamond ? ProductKind::Circle : kind;
  const auto phi = [&](const Matrix& x) -> Matrix {
    if (kind == ProductKind::Diamond) return two * m(half * x);
    return m(x);
  };

  // Step 1: images of the diagonal matrix units and the frame T0.
  std::vector<Matrix> diag_images;
  for (Index i = 0; i < n; ++i) {
    Matrix f = phi(unit(i, i));
    if (!is_idempotent(f)) throw RecoveryFailure(RecoveryStep::DiagonalIdempotents, "phi(E_ii) is not idempotent", {unit(i, i), f});
    if (exact_rank(f) != 1)
      throw RecoveryFailure(RecoveryStep::DiagonalIdempotents, "rank of phi(E_ii) is not 1", {unit(i, i), f});
    for (Index j = 0; j < i; ++j)
      if (!(f * diag_images[j]).is_zero() || !(diag_images[j] * f).is_zero())
        throw RecoveryFailure(RecoveryStep::DiagonalIdempotents, "phi(E_ii) and phi(E_jj) are not orthogonal",
                              {diag_images[j], f});
    diag_images.push_back(std::move(f));
  }
  Matrix t0(n, field);
  for (Index i = 0; i < n; ++i) {
    const Index col = detail::first_nonzero_column(diag_images[i]);
    for (Index r = 0; r < n; ++r) t0.set(r, i, diag_images[i](r, col));
  }
  const auto t0_inv_opt = inverse(t0);
  if (!t0_inv_opt) throw RecoveryFailure(RecoveryStep::DiagonalIdempotents, "frame T0 is singular", {t0});
  const Matrix t0_inv = *t0_inv_opt;
  const auto psi = [&](const Matrix& x) { return t0_inv * phi(x) * t0; };

  // Steps 2-3: matrix-unit images.
  const PairSet rho = a.order().pairs();
  std::map<IndexPair, Scalar> g_values;
  std::map<IndexPair, bool> transposed;
  for (const auto& [i, j] : rho) {
    const Matrix e = unit(i, j);
    const Matrix img = psi(e);
    if (!img.supported_in(i == j ? IndexSet{i} : IndexSet{std::min(i, j), std::max(i, j)}))
      throw RecoveryFailure(RecoveryStep::SupportPreservation, "psi(E_ij) leaves {i,j} x {i,j} at " + format_pair({i, j}),
                            {e, img});
    if (i == j) {
      if (!(img == e)) throw RecoveryFailure(RecoveryStep::DiagonalIdempotents, "psi(E_ii) != E_ii", {e, img});
      g_values.emplace(IndexPair{i, i}, Scalar::one(field));
      continue;
    }
    if (!img(i, i).is_zero() || !img(j, j).is_zero())
      throw RecoveryFailure(RecoveryStep::MatrixUnitImages, "psi(E_ij) has a nonzero diagonal at " + format_pair({i, j}),
                            {e, img});
    const bool forward = !img(i, j).is_zero();
    const bool backward = !img(j, i).is_zero();
    if (forward == backward)
      throw RecoveryFailure(RecoveryStep::MatrixUnitImages,
                            "psi(E_ij) is proportional to neither E_ij nor E_ji at " + format_pair({i, j}), {e, img});
    g_values.emplace(IndexPair{i, j}, forward ? img(i, j) : img(j, i));
    transposed.emplace(IndexPair{i, j}, backward);
  }

  // Step 4: one orientation per class.
  const auto& part = a.classes();
  std::vector<ClassRecovery> classes(part.classes.size());
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    classes[c].members = part.classes[c];
    std::optional<bool> orientation;
    for (const auto& [p, t] : transposed) {
      if (part.class_of[p.first] != c) continue;
      if (orientation && *orientation != t)
        throw RecoveryFailure(RecoveryStep::ClassOrientation,
                              "class " + format_index_set(part.classes[c]) + " mixes E_ij and E_ji images");
      orientation = t;
    }
    if (orientation.value_or(false) && working_kind == ProductKind::Standard)
      throw RecoveryFailure(RecoveryStep::ClassOrientation, "a multiplicative map transposes class " +
                                                               format_index_set(part.classes[c]));
    classes[c].dagger = orientation.value_or(false) ? DaggerOp::Transpose : DaggerOp::Identity;
  }

  // Step 5.
  TransitiveMap g(a.order(), field, g_values);
  const auto cocycle = validate_transitive_map(g);
  if (!cocycle.valid)
    throw RecoveryFailure(RecoveryStep::Transitivity, "g(i,j) g(j,k) != g(i,k) at " + format_pair(cocycle.witness->at(0)) +
                                                          ", " + format_pair(cocycle.witness->at(1)));

  // Step 6: omega_C from psi(lambda E_ii) = omega_C(lambda) E_ii.
  const auto tests = omega_test_set(field);
  IndexSet singletons;
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    ClassRecovery& cr = classes[c];
    const bool certified = cr.members.size() >= 2;
    cr.additivity_certified = certified;
    if (!certified) singletons.push_back(cr.members.front());

    std::map<std::string, Scalar> memo;
    const auto omega_at = [&](Index i, const Scalar& lambda) -> Scalar {
      const std::string key = std::to_string(i) + ":" + lambda.to_string();
      if (const auto it = memo.find(key); it != memo.end()) return it->second;
      const Matrix x = lambda * unit(i, i);
      const Matrix img = psi(x);
      if (!img.supported_in({i}))
        throw RecoveryFailure(RecoveryStep::ScalarMaps, "psi(lambda E_ii) is not a multiple of E_ii", {x, img});
      return memo.emplace(key, img(i, i)).first->second;
    };

    const Index rep = cr.members.front();
    for (const auto& lambda : tests) {
      const Scalar value = omega_at(rep, lambda);
      for (Index i : cr.members)
        if (!(omega_at(i, lambda) == value))
          throw RecoveryFailure(RecoveryStep::ScalarMaps, "omega differs across class " + format_index_set(cr.members) +
                                                              " at lambda = " + lambda.to_string());
      cr.omega_samples.emplace_back(lambda, value);
    }
    cr.additive_on_samples = true;
    for (const auto& x : tests)
      for (const auto& y : tests) {
        if (!(omega_at(rep, x * y) == omega_at(rep, x) * omega_at(rep, y)))
          throw RecoveryFailure(RecoveryStep::ScalarMaps, "omega_C is not multiplicative at " + x.to_string() + ", " +
                                                              y.to_string());
        if (!(omega_at(rep, x + y) == omega_at(rep, x) + omega_at(rep, y))) {
          cr.additive_on_samples = false;
          if (certified)
            throw RecoveryFailure(RecoveryStep::ScalarMaps, "omega_C is not additive at " + x.to_string() + ", " +
                                                                y.to_string() + " on a class with |C| >= 2");
        }
      }
    for (const auto& candidate : detail::omega_catalog(field, !certified)) {
      bool agrees = true;
      for (const auto& [lambda, value] : cr.omega_samples) agrees = agrees && candidate(lambda) == value;
      if (agrees) {
        cr.omega = candidate;
        break;
      }
    }
  }

  for (const auto& cr : classes)
    if (!cr.omega)
      throw RecoveryFailure(RecoveryStep::ScalarMaps, "unclassified samples for omega on class " + format_index_set(cr.members));

  std::vector<ClassAction> actions;
  for (const auto& cr : classes) actions.push_back({*cr.omega, cr.dagger});
  CanonicalMapSpec spec(a, t0, g, std::move(actions), working_kind, /*allow_non_additive=*/true);

  // Step 7: residual.
  Rng rng(seed);
  for (std::size_t s = 0; s < sample_count; ++s) {
    const Matrix x = a.random_element(rng, kSampleBound);
    const Matrix expected = kind == ProductKind::Diamond ? half * spec(two * x) : spec(x);
    const Matrix actual = m(x);
    if (!(expected == actual))
      throw RecoveryFailure(RecoveryStep::Residual, "recovered form disagrees with the map", {x, actual, expected});
  }

  return RecoveryResult{std::move(spec), kind, std::move(classes), std::move(singletons), sample_count};
}

}  // namespace smakit
