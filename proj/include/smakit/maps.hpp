#pragma once

// Canonical multiplicative / Jordan-multiplicative maps
//   phi(X) = T g*( sum_C omega_C(P_C X)^{dagger_C} ) T^{-1}
// and sampled black-box checks of product preservation, additivity and
// injectivity.

#include <smakit/linalg.hpp>
#include <smakit/random.hpp>
#include <smakit/sma.hpp>

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smakit {

enum class DaggerOp { Identity, Transpose };

inline std::string dagger_name(DaggerOp d) { return d == DaggerOp::Identity ? "id" : "t"; }

inline DaggerOp parse_dagger(std::string_view s) {
  if (s == "id") return DaggerOp::Identity;
  if (s == "t") return DaggerOp::Transpose;
  throw ParseError("unknown dagger '" + std::string(s) + "' (expected id or t)");
}

struct ClassAction {
  ScalarMap omega;
  DaggerOp dagger;
};

class InvalidCanonicalSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OutsideDomain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The data (T, g, omega_C, dagger_C) of a canonical map, one ClassAction per
/// central class in class order. On a transposed class the entry X_ij lands
/// at (j,i), scaled by g(i,j).
class CanonicalMapSpec {
 public:
  /// allow_non_additive admits Cube as omega_C; it is used only to describe
  /// recovered maps, which need not be of the canonical form.
  CanonicalMapSpec(Sma algebra, Matrix t, TransitiveMap g, std::vector<ClassAction> per_class, ProductKind mode,
                   bool allow_non_additive = false)
      : algebra_(std::move(algebra)),
        t_(std::move(t)),
        t_inverse_(t_),
        g_(std::move(g)),
        per_class_(std::move(per_class)),
        mode_(mode) {
    if (t_.size() != algebra_.size() || t_.field() != algebra_.field()) throw InvalidCanonicalSpec("T has the wrong shape or field");
    const auto inv = inverse(t_);
    if (!inv) throw InvalidCanonicalSpec("T is not invertible");
    t_inverse_ = *inv;
    if (!(g_.order() == algebra_.order())) throw InvalidCanonicalSpec("g is defined on a different quasi-order");
    const auto cocycle = validate_transitive_map(g_);
    if (!cocycle.valid)
      throw InvalidCanonicalSpec("g is not transitive at " + format_pair(cocycle.witness->at(0)) + ", " +
                                 format_pair(cocycle.witness->at(1)));
    if (per_class_.size() != algebra_.classes().classes.size())
      throw InvalidCanonicalSpec("expected one omega/dagger pair per central class");
    for (const auto& action : per_class_) {
      if (action.omega.domain() != algebra_.field()) throw InvalidCanonicalSpec("omega acts on the wrong field");
      if (!allow_non_additive && !action.omega.is_ring_endomorphism())
        throw InvalidCanonicalSpec("omega_C must be a ring endomorphism");
      if (mode_ == ProductKind::Standard && action.dagger != DaggerOp::Identity)
        throw InvalidCanonicalSpec("a multiplicative canonical map cannot transpose a class");
    }
  }

  const Sma& algebra() const { return algebra_; }
  const Matrix& t() const { return t_; }
  const Matrix& t_inverse() const { return t_inverse_; }
  const TransitiveMap& g() const { return g_; }
  const std::vector<ClassAction>& per_class() const { return per_class_; }
  ProductKind mode() const { return mode_; }

  /// The inner part g*( sum_C omega_C(P_C X)^{dagger_C} ), before conjugation by T.
  Matrix inner(const Matrix& x) const {
    if (!algebra_.contains(x)) throw OutsideDomain("X is not in A_rho");
    const std::size_t n = algebra_.size();
    const auto& part = algebra_.classes();
    Matrix y(n, algebra_.field());
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        if (x(i, j).is_zero()) continue;
        const ClassAction& action = per_class_[part.class_of[i]];
        Scalar v = g_(i, j) * action.omega(x(i, j));
        if (action.dagger == DaggerOp::Identity)
          y.set(i, j, std::move(v));
        else
          y.set(j, i, std::move(v));
      }
    return y;
  }

  Matrix operator()(const Matrix& x) const { return t_ * inner(x) * t_inverse_; }

 private:
  Sma algebra_;
  Matrix t_;
  Matrix t_inverse_;
  TransitiveMap g_;
  std::vector<ClassAction> per_class_;
  ProductKind mode_;
};

inline Matrix eval_canonical(const CanonicalMapSpec& s, const Matrix& x) { return s(x); }

/// T = I, g = 1, omega = Identity, dagger = Identity on every class.
inline CanonicalMapSpec identity_spec(const Sma& a, ProductKind mode) {
  std::vector<ClassAction> actions(a.classes().classes.size(),
                                   ClassAction{ScalarMap(ScalarMapKind::Identity, a.field()), DaggerOp::Identity});
  return CanonicalMapSpec(a, Matrix::identity(a.size(), a.field()), TransitiveMap::trivial(a.order(), a.field()),
                          std::move(actions), mode);
}

/// A random canonical map: T invertible in M_n, g(i,j) = c_i/c_j, omega_C a
/// random ring endomorphism of the field, dagger_C random in Jordan modes.
inline CanonicalMapSpec random_canonical_spec(const Sma& a, ProductKind mode, Rng& rng, long bound = 3) {
  // Integer entries keep T^-1 (and every evaluation) on small denominators.
  std::optional<Matrix> t;
  for (int attempt = 0; attempt < 64 && !t; ++attempt) {
    Matrix c(a.size(), a.field());
    for (Index i = 0; i < a.size(); ++i)
      for (Index j = 0; j < a.size(); ++j) c.set(i, j, random_integer_scalar(rng, a.field(), bound));
    if (!determinant(c).is_zero()) t = std::move(c);
  }
  if (!t) throw RetryBudgetExhausted("no invertible T found in 64 draws");
  TransitiveMap g = TransitiveMap::random(a.order(), a.field(), rng, bound);
  std::vector<ClassAction> actions;
  for (std::size_t c = 0; c < a.classes().classes.size(); ++c) {
    ScalarMapKind kind = ScalarMapKind::Identity;
    if (a.field().kind() == FieldKind::GaussianRational && rng.coin()) kind = ScalarMapKind::Conjugation;
    DaggerOp dagger = DaggerOp::Identity;
    if (mode != ProductKind::Standard && rng.coin()) dagger = DaggerOp::Transpose;
    actions.push_back({ScalarMap(kind, a.field()), dagger});
  }
  return CanonicalMapSpec(a, std::move(*t), std::move(g), std::move(actions), mode);
}

/// The algebra a black-box map is defined on: a spanning set of probe
/// elements (matrix units for an SMA) and a membership predicate.
class MapDomain {
 public:
  MapDomain(std::string name, std::size_t n, const FieldDescriptor& field, std::vector<Matrix> basis,
            std::function<bool(const Matrix&)> contains)
      : name_(std::move(name)), n_(n), field_(field), basis_(std::move(basis)), contains_(std::move(contains)) {}

  static MapDomain of(const Sma& a) {
    return MapDomain("A_rho " + a.order().to_string(), a.size(), a.field(), a.basis(),
                     [a](const Matrix& x) { return a.contains(x); });
  }

  const std::string& name() const { return name_; }
  std::size_t size() const { return n_; }
  const FieldDescriptor& field() const { return field_; }
  const std::vector<Matrix>& basis() const { return basis_; }
  bool contains(const Matrix& x) const { return contains_(x); }

  /// Random combination of the basis (for an SMA: random entries on rho).
  Matrix random_element(Rng& rng, long bound) const {
    Matrix x(n_, field_);
    for (const auto& b : basis_) {
      const Scalar c = random_scalar(rng, field_, bound);
      if (c.is_zero()) continue;
      for (Index i = 0; i < n_; ++i)
        for (Index j = 0; j < n_; ++j)
          if (!b(i, j).is_zero()) x.add_to(i, j, c * b(i, j));
    }
    return x;
  }

 private:
  std::string name_;
  std::size_t n_;
  FieldDescriptor field_;
  std::vector<Matrix> basis_;
  std::function<bool(const Matrix&)> contains_;
};

/// A map known only through evaluation. The function must be pure: the
/// verifiers may call it any number of times in any order.
struct EvaluableMap {
  MapDomain domain;
  std::function<Matrix(const Matrix&)> fn;
  ProductKind declared;
  std::string name;

  Matrix operator()(const Matrix& x) const { return fn(x); }
};

inline EvaluableMap as_evaluable(const CanonicalMapSpec& s, std::string name = "canonical") {
  return EvaluableMap{MapDomain::of(s.algebra()), [s](const Matrix& x) { return s(x); }, s.mode(), std::move(name)};
}

inline EvaluableMap identity_map(const Sma& a) {
  return EvaluableMap{MapDomain::of(a), [](const Matrix& x) { return x; }, ProductKind::Standard, "identity"};
}

struct CheckResult {
  bool passed = true;
  std::size_t checks = 0;
  /// First failing input(s), in deterministic sample order.
  std::optional<Matrix> x;
  std::optional<Matrix> y;
  std::string detail;
};

/// Entry bound for sampled inputs.
constexpr long kSampleBound = 4;

namespace detail {

/// Identity followed by the domain basis.
inline std::vector<Matrix> probes(const MapDomain& d) {
  std::vector<Matrix> out{Matrix::identity(d.size(), d.field())};
  out.insert(out.end(), d.basis().begin(), d.basis().end());
  return out;
}

template <typename PairCheck>
CheckResult check_pairs(const EvaluableMap& m, std::size_t sample_count, std::uint64_t seed, PairCheck&& failing) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  CheckResult r;
  const auto ps = probes(m.domain);
  std::vector<Matrix> images;
  images.reserve(ps.size());
  for (const auto& p : ps) images.push_back(m(p));
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = 0; b < ps.size(); ++b) {
      ++r.checks;
      if (auto why = failing(ps[a], ps[b], images[a], images[b])) {
        r.passed = false;
        r.x = ps[a];
        r.y = ps[b];
        r.detail = *why;
        return r;
      }
    }
  Rng rng(seed);
  for (std::size_t s = 0; s < sample_count; ++s) {
    const Matrix x = m.domain.random_element(rng, kSampleBound);
    const Matrix y = m.domain.random_element(rng, kSampleBound);
    ++r.checks;
    if (auto why = failing(x, y, m(x), m(y))) {
      r.passed = false;
      r.x = x;
      r.y = y;
      r.detail = *why;
      return r;
    }
  }
  return r;
}

}  // namespace detail

/// phi(X . Y) == phi(X) . phi(Y) on all pairs of probes (I and the basis)
/// and on sample_count random pairs.
inline CheckResult verify_product_preservation(const EvaluableMap& m, ProductKind kind, std::size_t sample_count,
                                               std::uint64_t seed) {
  return detail::check_pairs(m, sample_count, seed,
                             [&](const Matrix& x, const Matrix& y, const Matrix& fx, const Matrix& fy) -> std::optional<std::string> {
                               const Matrix lhs = m(product(kind, x, y));
                               const Matrix rhs = product(kind, fx, fy);
                               if (lhs == rhs) return std::nullopt;
                               return "phi(X " + mode_name(kind) + " Y) = " + lhs.to_inline_string() +
                                      " but phi(X) " + mode_name(kind) + " phi(Y) = " + rhs.to_inline_string();
                             });
}

/// phi(X + Y) == phi(X) + phi(Y) on the same pair schedule.
inline CheckResult verify_additivity(const EvaluableMap& m, std::size_t sample_count, std::uint64_t seed) {
  return detail::check_pairs(m, sample_count, seed,
                             [&](const Matrix& x, const Matrix& y, const Matrix& fx, const Matrix& fy) -> std::optional<std::string> {
                               const Matrix lhs = m(x + y);
                               const Matrix rhs = fx + fy;
                               if (lhs == rhs) return std::nullopt;
                               return "phi(X+Y) = " + lhs.to_inline_string() + " but phi(X)+phi(Y) = " + rhs.to_inline_string();
                             });
}

/// Looks for two distinct inputs with equal images among the probes and
/// sample_count random elements.
inline CheckResult verify_injectivity_on_samples(const EvaluableMap& m, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 2) throw std::invalid_argument("sample_count must be >= 2");
  std::vector<Matrix> inputs = detail::probes(m.domain);
  Rng rng(seed);
  for (std::size_t s = 0; s < sample_count; ++s) inputs.push_back(m.domain.random_element(rng, kSampleBound));
  CheckResult r;
  std::set<std::string> seen_inputs;
  std::map<std::string, Matrix> image_owner;
  for (const auto& x : inputs) {
    const std::string key = x.to_inline_string();
    if (!seen_inputs.insert(key).second) continue;
    ++r.checks;
    const std::string image = m(x).to_inline_string();
    const auto [it, fresh] = image_owner.emplace(image, x);
    if (!fresh) {
      r.passed = false;
      r.x = it->second;
      r.y = x;
      r.detail = "distinct inputs share the image " + image;
      return r;
    }
  }
  return r;
}

}  // namespace smakit
