#pragma once

// Non-additive injective maps that preserve products: the cube map on the
// one-dimensional central summands of an SMA, and a 5x5 unital (non-SMA)
// algebra whose central classes are all large yet still admits one.

#include <smakit/maps.hpp>

#include <stdexcept>
#include <string>

namespace smakit {

class CounterexampleRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// phi(X) = X + sum over singleton classes {i} of (X_ii^3 - X_ii) E_ii.
/// Preserves the standard and the normalized Jordan product. For
/// target = Diamond the rescaled map X -> phi(2X)/2 is returned instead,
/// since the cube does not fix 2.
inline EvaluableMap build_counterexample(const Sma& a, ProductKind target = ProductKind::Standard) {
  if (a.field().kind() == FieldKind::Prime)
    throw CounterexampleRefused("the cube counterexample is only constructed over Q and Qi");
  const IndexSet singles = a.classes().singleton_indices();
  if (singles.empty())
    throw CounterexampleRefused("every central class has at least two elements; no counterexample of this form exists");
  auto cube_singletons = [singles](const Matrix& x) {
    Matrix out = x;
    for (Index i : singles) out.set(i, i, x(i, i) * x(i, i) * x(i, i));
    return out;
  };
  MapDomain domain = MapDomain::of(a);
  if (target == ProductKind::Diamond) {
    const Scalar two = Scalar::from_int(a.field(), 2);
    const Scalar half = Scalar::from_fraction(a.field(), 1, 2);
    return EvaluableMap{std::move(domain),
                        [a, cube_singletons, two, half](const Matrix& x) {
                          if (!a.contains(x)) throw OutsideDomain("X is not in A_rho");
                          return half * cube_singletons(two * x);
                        },
                        ProductKind::Diamond, "rescaled cube on singleton classes"};
  }
  return EvaluableMap{std::move(domain),
                      [a, cube_singletons](const Matrix& x) {
                        if (!a.contains(x)) throw OutsideDomain("X is not in A_rho");
                        return cube_singletons(x);
                      },
                      ProductKind::Standard, "cube on singleton classes"};
}

struct NonSmaExample {
  MapDomain algebra;
  EvaluableMap map;
};

/// The algebra of 5x5 rational matrices
///
///   [ x11  0   0   0   0  ]
///   [ x21  y   z   0   0  ]
///   [ 0    0   x33 0   0  ]
///   [ 0    0   z   y   x45]
///   [ 0    0   0   0   x55]
///
/// with the map that moves x45 to (2,4), x55 to (4,4), clears row 4 of z and
/// writes x11^3 at (5,5).
inline NonSmaExample non_sma_cube_example() {
  const FieldDescriptor q = FieldDescriptor::rational();
  constexpr std::size_t n = 5;
  auto e = [&](Index i, Index j) { return Matrix::unit(n, q, i - 1, j - 1); };
  std::vector<Matrix> basis{e(1, 1), e(2, 1), e(2, 2) + e(4, 4), e(2, 3) + e(4, 3), e(3, 3), e(4, 5), e(5, 5)};
  auto member = [](const Matrix& x) {
    if (x.size() != n || x.field() != FieldDescriptor::rational()) return false;
    static const bool allowed[n][n] = {{1, 0, 0, 0, 0}, {1, 1, 1, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 1, 1, 1}, {0, 0, 0, 0, 1}};
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (!allowed[i][j] && !x(i, j).is_zero()) return false;
    return x(1, 1) == x(3, 3) && x(1, 2) == x(3, 2);
  };
  MapDomain domain("5x5 non-SMA algebra", n, q, std::move(basis), member);
  auto phi = [member](const Matrix& x) {
    if (!member(x)) throw OutsideDomain("X is not in the 5x5 algebra");
    const auto& x11 = x(0, 0);
    Matrix out(n, FieldDescriptor::rational());
    out.set(0, 0, x11);
    out.set(1, 0, x(1, 0));
    out.set(1, 1, x(1, 1));
    out.set(1, 2, x(1, 2));
    out.set(1, 3, x(3, 4));
    out.set(2, 2, x(2, 2));
    out.set(3, 3, x(4, 4));
    out.set(4, 4, x11 * x11 * x11);
    return out;
  };
  EvaluableMap map{domain, phi, ProductKind::Standard, "5x5 cube example"};
  return NonSmaExample{std::move(domain), std::move(map)};
}

}  // namespace smakit
