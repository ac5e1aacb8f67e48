#pragma once

// Dense n x n matrices over an exact field.

#include <smakit/quasi_order.hpp>
#include <smakit/scalar.hpp>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smakit {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Matrix {
 public:
  Matrix(std::size_t n, const FieldDescriptor& field)
      : n_(n), field_(field), entries_(n * n, Scalar::zero(field)) {}

  static Matrix identity(std::size_t n, const FieldDescriptor& field) {
    Matrix m(n, field);
    for (Index i = 0; i < n; ++i) m.entries_[i * n + i] = Scalar::one(field);
    return m;
  }

  /// Matrix unit E_ij.
  static Matrix unit(std::size_t n, const FieldDescriptor& field, Index i, Index j) {
    Matrix m(n, field);
    m.set(i, j, Scalar::one(field));
    return m;
  }

  static Matrix diagonal(const std::vector<Scalar>& d) {
    if (d.empty()) throw DimensionError("empty diagonal");
    Matrix m(d.size(), d.front().field());
    for (Index i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
  }

  std::size_t size() const { return n_; }
  const FieldDescriptor& field() const { return field_; }

  const Scalar& operator()(Index i, Index j) const { return entries_[i * n_ + j]; }

  void set(Index i, Index j, Scalar value) {
    if (i >= n_ || j >= n_) throw DimensionError("entry index out of range");
    if (value.field() != field_) throw FieldError("entry field " + value.field().tag() + " in a " + field_.tag() + " matrix");
    entries_[i * n_ + j] = std::move(value);
  }

  /// Adds value to entry (i,j).
  void add_to(Index i, Index j, const Scalar& value) {
    entries_[i * n_ + j] += value;
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  bool is_diagonal() const {
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  PairSet support() const {
    PairSet out;
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j)
        if (!(*this)(i, j).is_zero()) out.insert({i, j});
    return out;
  }

  /// supp X is contained in S x S.
  bool supported_in(const IndexSet& s) const {
    std::vector<bool> in(n_, false);
    for (Index k : s) in.at(k) = true;
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j)
        if ((!in[i] || !in[j]) && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  Scalar trace() const {
    Scalar t = Scalar::zero(field_);
    for (Index i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix transpose() const {
    Matrix t(n_, field_);
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j) t.entries_[j * n_ + i] = (*this)(i, j);
    return t;
  }

  Matrix map_entries(const std::function<Scalar(const Scalar&)>& f) const {
    Matrix out(n_, field_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = f(entries_[k]);
    out.check_entry_fields();
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_compatible(b);
    Matrix out(a);
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
      if (!b.entries_[k].is_zero()) out.entries_[k] += b.entries_[k];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_compatible(b);
    Matrix out(a);
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
      if (!b.entries_[k].is_zero()) out.entries_[k] -= b.entries_[k];
    return out;
  }

  Matrix operator-() const {
    Matrix out(n_, field_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = -entries_[k];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.require_compatible(b);
    const std::size_t n = a.n_;
    Matrix out(n, a.field_);
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) {
        const Scalar& aik = a.entries_[i * n + k];
        if (aik.is_zero()) continue;
        for (Index j = 0; j < n; ++j) {
          const Scalar& bkj = b.entries_[k * n + j];
          if (!bkj.is_zero()) out.entries_[i * n + j].add_product(aik, bkj);
        }
      }
    return out;
  }

  friend Matrix operator*(const Scalar& s, const Matrix& m) {
    if (s.field() != m.field_) throw FieldError("scalar/matrix field mismatch");
    Matrix out(m.n_, m.field_);
    if (s.is_zero()) return out;
    for (std::size_t k = 0; k < m.entries_.size(); ++k)
      if (!m.entries_[k].is_zero()) out.entries_[k] = s * m.entries_[k];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.field_ == b.field_ && a.entries_ == b.entries_;
  }

  /// Rows separated by newlines, entries by single spaces.
  std::string to_string() const {
    std::string out;
    for (Index i = 0; i < n_; ++i) {
      for (Index j = 0; j < n_; ++j) {
        if (j) out += ' ';
        out += (*this)(i, j).to_string();
      }
      out += '\n';
    }
    return out;
  }

  /// Single-line form `[[a b];[c d]]` for diagnostics.
  std::string to_inline_string() const {
    std::string out = "[";
    for (Index i = 0; i < n_; ++i) {
      if (i) out += ';';
      out += '[';
      for (Index j = 0; j < n_; ++j) {
        if (j) out += ' ';
        out += (*this)(i, j).to_string();
      }
      out += ']';
    }
    return out + "]";
  }

  void require_compatible(const Matrix& other) const {
    if (n_ != other.n_) throw DimensionError("dimension mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
    if (field_ != other.field_) throw FieldError("field mismatch: " + field_.tag() + " vs " + other.field_.tag());
  }

 private:
  void check_entry_fields() const {
    for (const auto& e : entries_)
      if (e.field() != field_) throw FieldError("entry map changed the field");
  }

  std::size_t n_;
  FieldDescriptor field_;
  std::vector<Scalar> entries_;
};

/// omega(X) = [omega(X_ij)].
inline Matrix entrywise_map(const ScalarMap& m, const Matrix& x) {
  if (x.field() != m.domain()) throw FieldError("matrix over " + x.field().tag() + " outside the map domain " + m.domain().tag());
  return x.map_entries([&](const Scalar& s) { return m(s); });
}

inline bool is_idempotent(const Matrix& p) { return p * p == p; }

}  // namespace smakit
