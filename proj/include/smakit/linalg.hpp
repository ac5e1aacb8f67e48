#pragma once

// Exact elimination: echelon forms, rank, Bareiss determinant, inverse and
// null spaces of rectangular systems.

#include <smakit/matrix.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace smakit {

using Row = std::vector<Scalar>;

/// A rows x cols array of scalars used for linear systems.
struct ScalarTable {
  FieldDescriptor field;
  std::size_t cols;
  std::vector<Row> rows;

  ScalarTable(const FieldDescriptor& f, std::size_t c) : field(f), cols(c) {}

  void add_row(Row r) {
    if (r.size() != cols) throw DimensionError("row length mismatch");
    rows.push_back(std::move(r));
  }
};

/// Reduces t to reduced row echelon form in place (zero rows dropped) and
/// returns the pivot columns.
inline std::vector<std::size_t> reduce_to_echelon(ScalarTable& t) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < t.cols && r < t.rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < t.rows.size() && t.rows[pivot][c].is_zero()) ++pivot;
    if (pivot == t.rows.size()) continue;
    std::swap(t.rows[r], t.rows[pivot]);
    const Scalar inv = t.rows[r][c].inverse();
    for (std::size_t k = c; k < t.cols; ++k)
      if (!t.rows[r][k].is_zero()) t.rows[r][k] *= inv;
    for (std::size_t other = 0; other < t.rows.size(); ++other) {
      if (other == r || t.rows[other][c].is_zero()) continue;
      const Scalar factor = t.rows[other][c];
      for (std::size_t k = c; k < t.cols; ++k)
        if (!t.rows[r][k].is_zero()) t.rows[other][k] -= factor * t.rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  t.rows.resize(r);
  return pivots;
}

/// Basis of { x : t x = 0 }, one vector per free column (free entry set to 1).
inline std::vector<Row> null_space(ScalarTable t) {
  const auto pivots = reduce_to_echelon(t);
  std::vector<bool> is_pivot(t.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Row> basis;
  for (std::size_t free = 0; free < t.cols; ++free) {
    if (is_pivot[free]) continue;
    Row v(t.cols, Scalar::zero(t.field));
    v[free] = Scalar::one(t.field);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -t.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline ScalarTable to_table(const Matrix& m) {
  ScalarTable t(m.field(), m.size());
  for (Index i = 0; i < m.size(); ++i) {
    Row r;
    r.reserve(m.size());
    for (Index j = 0; j < m.size(); ++j) r.push_back(m(i, j));
    t.add_row(std::move(r));
  }
  return t;
}

inline std::size_t exact_rank(const Matrix& x) {
  ScalarTable t = to_table(x);
  return reduce_to_echelon(t).size();
}

/// Fraction-free (Bareiss) determinant; every division is exact.
inline Scalar determinant(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<Row> a = to_table(m).rows;
  Scalar sign = Scalar::one(m.field());
  Scalar prev = Scalar::one(m.field());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k].is_zero()) ++swap;
      if (swap == n) return Scalar::zero(m.field());
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Gauss-Jordan inverse; nullopt when m is singular.
inline std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.size();
  ScalarTable t(m.field(), 2 * n);
  for (Index i = 0; i < n; ++i) {
    Row r(2 * n, Scalar::zero(m.field()));
    for (Index j = 0; j < n; ++j) r[j] = m(i, j);
    r[n + i] = Scalar::one(m.field());
    t.add_row(std::move(r));
  }
  const auto pivots = reduce_to_echelon(t);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix out(n, m.field());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out.set(i, j, t.rows[i][n + j]);
  return out;
}

}  // namespace smakit
