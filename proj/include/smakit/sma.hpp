#pragma once

// Structural matrix algebras A_rho = span{E_ij : (i,j) in rho}, their
// products, central idempotents and the automorphisms induced by transitive
// maps.

#include <smakit/linalg.hpp>
#include <smakit/matrix.hpp>
#include <smakit/quasi_order.hpp>
#include <smakit/random.hpp>

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smakit {

enum class ProductKind { Standard, Diamond, Circle };

/// File-format names of the product a map preserves: mul, jordan, njordan.
inline std::string mode_name(ProductKind k) {
  switch (k) {
    case ProductKind::Standard: return "mul";
    case ProductKind::Diamond: return "jordan";
    case ProductKind::Circle: return "njordan";
  }
  return {};
}

inline ProductKind parse_mode(std::string_view name) {
  if (name == "mul") return ProductKind::Standard;
  if (name == "jordan") return ProductKind::Diamond;
  if (name == "njordan") return ProductKind::Circle;
  throw ParseError("unknown mode '" + std::string(name) + "' (expected mul, jordan or njordan)");
}

/// XY, XY + YX, or (XY + YX)/2.
inline Matrix product(ProductKind kind, const Matrix& x, const Matrix& y) {
  switch (kind) {
    case ProductKind::Standard: return x * y;
    case ProductKind::Diamond: return x * y + y * x;
    case ProductKind::Circle: return Scalar::from_fraction(x.field(), 1, 2) * (x * y + y * x);
  }
  throw std::logic_error("unknown product");
}

class RetryBudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Sma {
 public:
  Sma(QuasiOrder order, const FieldDescriptor& field)
      : order_(std::move(order)), field_(field), classes_(central_classes(order_)) {}

  const QuasiOrder& order() const { return order_; }
  const FieldDescriptor& field() const { return field_; }
  std::size_t size() const { return order_.size(); }
  const CentralPartition& classes() const { return classes_; }

  bool contains(const Matrix& x) const {
    if (x.size() != size()) throw DimensionError("matrix size " + std::to_string(x.size()) + " in an SMA on [" + std::to_string(size()) + "]");
    if (x.field() != field_) throw FieldError("matrix over " + x.field().tag() + " in an SMA over " + field_.tag());
    for (Index i = 0; i < size(); ++i)
      for (Index j = 0; j < size(); ++j)
        if (!order_.contains(i, j) && !x(i, j).is_zero()) return false;
    return true;
  }

  /// Matrix units E_ij, (i,j) in rho, in row-major order.
  std::vector<Matrix> basis() const {
    std::vector<Matrix> out;
    for (const auto& [i, j] : order_.pairs()) out.push_back(Matrix::unit(size(), field_, i, j));
    return out;
  }

  /// P_S = sum of E_ii over i in S.
  Matrix idempotent(const IndexSet& s) const {
    Matrix p(size(), field_);
    for (Index i : s) {
      if (i >= size()) throw DimensionError("index outside [n]");
      p.set(i, i, Scalar::one(field_));
    }
    return p;
  }

  /// (P_C) for the central classes C, in class order.
  std::vector<Matrix> center_basis() const {
    std::vector<Matrix> out;
    for (const auto& c : classes_.classes) out.push_back(idempotent(c));
    return out;
  }

  Matrix random_element(Rng& rng, long bound) const {
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    Matrix x(size(), field_);
    for (const auto& [i, j] : order_.pairs()) x.set(i, j, random_scalar(rng, field_, bound));
    return x;
  }

  Matrix random_invertible(Rng& rng, long bound) const {
    for (int attempt = 0; attempt < 64; ++attempt) {
      Matrix x = random_element(rng, bound);
      if (!determinant(x).is_zero()) return x;
    }
    throw RetryBudgetExhausted("no invertible element found in 64 draws");
  }

 private:
  QuasiOrder order_;
  FieldDescriptor field_;
  CentralPartition classes_;
};

inline bool contains(const Sma& a, const Matrix& x) { return a.contains(x); }
inline Matrix diagonal_idempotent(const Sma& a, const IndexSet& s) { return a.idempotent(s); }
inline std::vector<Matrix> center_basis(const Sma& a) { return a.center_basis(); }

inline Matrix random_element(const Sma& a, std::uint64_t seed, long bound) {
  Rng rng(seed);
  return a.random_element(rng, bound);
}

inline Matrix random_invertible(const Sma& a, std::uint64_t seed, long bound) {
  Rng rng(seed);
  return a.random_invertible(rng, bound);
}

/// dim { D in A_rho : D E_ij = E_ij D for all (i,j) in rho }, by solving the
/// commutant equations directly over the matrix-unit basis.
inline std::size_t center_dimension_oracle(const Sma& a) {
  const auto basis = a.basis();
  const std::size_t n = a.size();
  ScalarTable eqs(a.field(), basis.size());
  for (const auto& generator : basis) {
    std::vector<Matrix> commutators;
    commutators.reserve(basis.size());
    for (const auto& b : basis) commutators.push_back(b * generator - generator * b);
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y) {
        Row r;
        bool nonzero = false;
        for (const auto& c : commutators) {
          r.push_back(c(x, y));
          nonzero = nonzero || !c(x, y).is_zero();
        }
        if (nonzero) eqs.add_row(std::move(r));
      }
  }
  const std::size_t rank = reduce_to_echelon(eqs).size();
  return basis.size() - rank;
}

class TransitiveMapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A map g : rho -> F^x, meant to satisfy g(i,j) g(j,k) = g(i,k).
class TransitiveMap {
 public:
  TransitiveMap(QuasiOrder order, const FieldDescriptor& field, std::map<IndexPair, Scalar> values)
      : order_(std::move(order)), field_(field), values_(std::move(values)) {
    for (const auto& [p, v] : values_) {
      if (!order_.contains(p)) throw TransitiveMapError("value given at " + format_pair(p) + " outside rho");
      if (v.field() != field_) throw FieldError("transitive map value outside " + field_.tag());
    }
  }

  /// Values on rho^x; the diagonal is set to 1.
  static TransitiveMap from_strict_values(const QuasiOrder& order, const FieldDescriptor& field,
                                          std::map<IndexPair, Scalar> strict) {
    for (Index i = 0; i < order.size(); ++i) strict.insert_or_assign({i, i}, Scalar::one(field));
    return TransitiveMap(order, field, std::move(strict));
  }

  static TransitiveMap trivial(const QuasiOrder& order, const FieldDescriptor& field) {
    std::map<IndexPair, Scalar> v;
    for (const auto& p : order.pairs()) v.emplace(p, Scalar::one(field));
    return TransitiveMap(order, field, std::move(v));
  }

  /// g(i,j) = c_i / c_j; always transitive.
  static TransitiveMap from_potentials(const QuasiOrder& order, const std::vector<Scalar>& c) {
    if (c.size() != order.size()) throw DimensionError("one potential per index required");
    std::map<IndexPair, Scalar> v;
    for (const auto& [i, j] : order.pairs()) v.emplace(IndexPair{i, j}, c[i] / c[j]);
    return TransitiveMap(order, c.front().field(), std::move(v));
  }

  static TransitiveMap random(const QuasiOrder& order, const FieldDescriptor& field, Rng& rng, long bound) {
    std::vector<Scalar> c;
    for (Index i = 0; i < order.size(); ++i) c.push_back(random_nonzero_scalar(rng, field, bound));
    return from_potentials(order, c);
  }

  const QuasiOrder& order() const { return order_; }
  const FieldDescriptor& field() const { return field_; }
  const std::map<IndexPair, Scalar>& values() const { return values_; }

  /// g(i,j); throws when (i,j) has no value.
  const Scalar& operator()(Index i, Index j) const {
    const auto it = values_.find({i, j});
    if (it == values_.end()) throw TransitiveMapError("no value at " + format_pair({i, j}));
    return it->second;
  }

 private:
  QuasiOrder order_;
  FieldDescriptor field_;
  std::map<IndexPair, Scalar> values_;
};

struct CocycleCheck {
  bool valid = true;
  /// (i,j), (j,k) with g(i,j) g(j,k) != g(i,k).
  std::optional<std::array<IndexPair, 2>> witness;
};

/// Throws TransitiveMapError on a missing or zero value.
inline CocycleCheck validate_transitive_map(const TransitiveMap& g) {
  const QuasiOrder& q = g.order();
  for (const auto& p : q.pairs()) {
    const auto it = g.values().find(p);
    if (it == g.values().end()) throw TransitiveMapError("missing value at " + format_pair(p));
    if (it->second.is_zero()) throw TransitiveMapError("zero value at " + format_pair(p));
  }
  const std::size_t n = q.size();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (!q.contains(i, j)) continue;
      for (Index k = 0; k < n; ++k)
        if (q.contains(j, k) && !(g(i, j) * g(j, k) == g(i, k)))
          return CocycleCheck{false, std::array<IndexPair, 2>{IndexPair{i, j}, IndexPair{j, k}}};
    }
  return {};
}

/// g*(X): scales X_ij by g(i,j), or by g(i,j)^{-1} when inverse is set.
inline Matrix apply_induced_automorphism(const TransitiveMap& g, const Matrix& x, bool inverse = false) {
  const QuasiOrder& q = g.order();
  if (x.size() != q.size()) throw DimensionError("matrix size does not match the transitive map");
  Matrix out(x.size(), x.field());
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = 0; j < x.size(); ++j) {
      if (x(i, j).is_zero()) continue;
      if (!q.contains(i, j)) throw DimensionError("matrix not in A_rho: entry " + format_pair({i, j}));
      out.set(i, j, inverse ? x(i, j) / g(i, j) : x(i, j) * g(i, j));
    }
  return out;
}

}  // namespace smakit
