#pragma once

// Quasi-orders (reflexive transitive relations) on {0, ..., n-1}.
//
// Indices are 0-based throughout the library; the text formats and reports
// print them 1-based.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smakit {

using Index = std::size_t;
using IndexPair = std::pair<Index, Index>;
using PairSet = std::set<IndexPair>;
using IndexSet = std::vector<Index>;

inline std::string format_pair(const IndexPair& p) {
  return "(" + std::to_string(p.first + 1) + "," + std::to_string(p.second + 1) + ")";
}

inline std::string format_pairs(const PairSet& pairs) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : pairs) {
    if (!first) out += ',';
    out += format_pair(p);
    first = false;
  }
  return out + "}";
}

inline std::string format_index_set(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(s[k] + 1);
  }
  return out + "}";
}

class QuasiOrderError : public std::invalid_argument {
 public:
  enum class Kind { IndexOutOfRange, MissingReflexivePair, TransitivityViolation, UnsupportedSize };

  QuasiOrderError(Kind kind, std::string what, std::vector<IndexPair> witness = {})
      : std::invalid_argument(std::move(what)), kind_(kind), witness_(std::move(witness)) {}

  Kind kind() const { return kind_; }
  /// MissingReflexivePair: {(i,i)}. TransitivityViolation: {(i,j), (j,k), (i,k)}.
  const std::vector<IndexPair>& witness() const { return witness_; }

 private:
  Kind kind_;
  std::vector<IndexPair> witness_;
};

class QuasiOrder {
 public:
  /// Accepts `pairs` only if they already form a quasi-order; never closes.
  static QuasiOrder validate(std::size_t n, const PairSet& pairs) {
    QuasiOrder q(n, pairs);
    for (Index i = 0; i < n; ++i)
      if (!q.contains(i, i))
        throw QuasiOrderError(QuasiOrderError::Kind::MissingReflexivePair,
                              "missing reflexive pair " + format_pair({i, i}), {{i, i}});
    if (auto w = q.transitivity_witness())
      throw QuasiOrderError(QuasiOrderError::Kind::TransitivityViolation,
                            "not transitive: " + format_pair((*w)[0]) + " and " + format_pair((*w)[1]) +
                                " present but " + format_pair((*w)[2]) + " missing",
                            *w);
    return q;
  }

  /// Smallest quasi-order containing `pairs`.
  static QuasiOrder closure(std::size_t n, const PairSet& pairs) {
    QuasiOrder q(n, pairs);
    for (Index i = 0; i < n; ++i) q.set(i, i);
    // Warshall
    for (Index k = 0; k < n; ++k)
      for (Index i = 0; i < n; ++i)
        if (q.contains(i, k))
          for (Index j = 0; j < n; ++j)
            if (q.contains(k, j)) q.set(i, j);
    return q;
  }

  static QuasiOrder diagonal(std::size_t n) { return closure(n, {}); }

  static QuasiOrder full(std::size_t n) {
    PairSet all;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) all.insert({i, j});
    return validate(n, all);
  }

  /// The chain 0 <= 1 <= ... <= n-1 (upper triangular matrices).
  static QuasiOrder chain(std::size_t n) {
    PairSet up;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) up.insert({i, j});
    return validate(n, up);
  }

  std::size_t size() const { return n_; }

  bool contains(Index i, Index j) const { return i < n_ && j < n_ && rel_[i * n_ + j]; }
  bool contains(const IndexPair& p) const { return contains(p.first, p.second); }

  PairSet pairs() const {
    PairSet out;
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j)
        if (rel_[i * n_ + j]) out.insert({i, j});
    return out;
  }

  /// rho without its diagonal.
  PairSet strict_part() const {
    PairSet out;
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j)
        if (i != j && rel_[i * n_ + j]) out.insert({i, j});
    return out;
  }

  std::size_t pair_count() const { return static_cast<std::size_t>(std::count(rel_.begin(), rel_.end(), true)); }

  /// rho(i) = { j : (i,j) in rho }.
  IndexSet image(Index i) const {
    IndexSet out;
    for (Index j = 0; j < n_; ++j)
      if (contains(i, j)) out.push_back(j);
    return out;
  }

  /// rho^{-1}(i) = { j : (j,i) in rho }.
  IndexSet preimage(Index i) const {
    IndexSet out;
    for (Index j = 0; j < n_; ++j)
      if (contains(j, i)) out.push_back(j);
    return out;
  }

  std::string to_string() const { return format_pairs(pairs()); }

  friend bool operator==(const QuasiOrder&, const QuasiOrder&) = default;

 private:
  QuasiOrder(std::size_t n, const PairSet& pairs) : n_(n), rel_(n * n, false) {
    if (n == 0) throw QuasiOrderError(QuasiOrderError::Kind::IndexOutOfRange, "quasi-order needs n >= 1");
    for (const auto& [i, j] : pairs) {
      if (i >= n || j >= n)
        throw QuasiOrderError(QuasiOrderError::Kind::IndexOutOfRange,
                              "pair " + format_pair({i, j}) + " outside [" + std::to_string(n) + "]", {{i, j}});
      set(i, j);
    }
  }

  void set(Index i, Index j) { rel_[i * n_ + j] = true; }

  std::optional<std::vector<IndexPair>> transitivity_witness() const {
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j) {
        if (!contains(i, j)) continue;
        for (Index k = 0; k < n_; ++k)
          if (contains(j, k) && !contains(i, k)) return std::vector<IndexPair>{{i, j}, {j, k}, {i, k}};
      }
    return std::nullopt;
  }

  std::size_t n_;
  std::vector<bool> rel_;
};

inline QuasiOrder validate_quasi_order(std::size_t n, const PairSet& pairs) { return QuasiOrder::validate(n, pairs); }
inline QuasiOrder transitive_reflexive_closure(std::size_t n, const PairSet& pairs) {
  return QuasiOrder::closure(n, pairs);
}
inline PairSet strict_part(const QuasiOrder& q) { return q.strict_part(); }
inline std::pair<IndexSet, IndexSet> image_and_preimage(const QuasiOrder& q, Index i) {
  if (i >= q.size()) throw std::out_of_range("index outside [n]");
  return {q.image(i), q.preimage(i)};
}

/// Classes of the equivalence generated by "i ~ j iff (i,j) or (j,i) in rho".
/// Each class is sorted and the classes are ordered by least element.
struct CentralPartition {
  std::vector<IndexSet> classes;
  std::vector<std::size_t> class_of;

  std::size_t min_class_size() const {
    std::size_t m = class_of.size();
    for (const auto& c : classes) m = std::min(m, c.size());
    return m;
  }

  /// Every central class has at least two elements.
  bool no_singleton_class() const { return min_class_size() >= 2; }

  IndexSet singleton_indices() const {
    IndexSet out;
    for (const auto& c : classes)
      if (c.size() == 1) out.push_back(c.front());
    return out;
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t k = 0; k < classes.size(); ++k) out += (k ? "," : "") + format_index_set(classes[k]);
    return out + "}";
  }

  friend bool operator==(const CentralPartition&, const CentralPartition&) = default;
};

inline CentralPartition central_classes(const QuasiOrder& q) {
  const std::size_t n = q.size();
  CentralPartition part;
  part.class_of.assign(n, n);
  for (Index start = 0; start < n; ++start) {
    if (part.class_of[start] != n) continue;
    const std::size_t id = part.classes.size();
    IndexSet members{start};
    part.class_of[start] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const Index i = members[head];
      for (Index j = 0; j < n; ++j)
        if (part.class_of[j] == n && (q.contains(i, j) || q.contains(j, i))) {
          part.class_of[j] = id;
          members.push_back(j);
        }
    }
    std::sort(members.begin(), members.end());
    part.classes.push_back(std::move(members));
  }
  return part;
}

constexpr std::size_t kMaxEnumerationSize = 4;

/// Every quasi-order on [n] for 1 <= n <= 4, in a fixed order: subsets of the
/// off-diagonal pairs (row-major bit order) filtered by transitivity.
inline std::vector<QuasiOrder> enumerate_quasi_orders(std::size_t n) {
  if (n < 1 || n > kMaxEnumerationSize)
    throw QuasiOrderError(QuasiOrderError::Kind::UnsupportedSize,
                          "enumeration supports 1 <= n <= 4, got " + std::to_string(n));
  std::vector<IndexPair> off;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) off.push_back({i, j});
  std::vector<QuasiOrder> out;
  const std::size_t subsets = std::size_t{1} << off.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<bool> rel(n * n, false);
    for (Index i = 0; i < n; ++i) rel[i * n + i] = true;
    for (std::size_t b = 0; b < off.size(); ++b)
      if (mask >> b & 1) rel[off[b].first * n + off[b].second] = true;
    bool transitive = true;
    for (Index i = 0; i < n && transitive; ++i)
      for (Index j = 0; j < n && transitive; ++j)
        if (rel[i * n + j])
          for (Index k = 0; k < n; ++k)
            if (rel[j * n + k] && !rel[i * n + k]) {
              transitive = false;
              break;
            }
    if (!transitive) continue;
    PairSet pairs;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (rel[i * n + j]) pairs.insert({i, j});
    out.push_back(QuasiOrder::validate(n, pairs));
  }
  return out;
}

struct SaturationReport {
  enum class Hypothesis { None, RowClosure, ColumnClosure, ReversePair };

  bool hypotheses_hold = false;
  Hypothesis failed = Hypothesis::None;
  /// Pair of S at which the failed hypothesis was detected, and the pair it requires.
  std::optional<IndexPair> at;
  std::optional<IndexPair> required;
  /// Classes (by index in central_classes) met by S; filled when hypotheses hold.
  std::vector<std::size_t> classes_touched;
  bool containment_holds = false;
  std::string description;
};

/// Checks the closure hypotheses on S subset of rho^x: for each (i,j) in S,
/// (i,k) in S for k in rho^x(i), (l,j) in S for l in (rho^x)^{-1}(j), and
/// (j,i) in S whenever (j,i) in rho^x. When they hold, S must contain
/// rho^x restricted to every central class S touches; that containment is
/// confirmed and reported.
inline SaturationReport saturation_check(const QuasiOrder& q, const PairSet& s) {
  if (s.empty()) throw std::invalid_argument("saturation_check: S is empty");
  const PairSet strict = q.strict_part();
  for (const auto& p : s)
    if (!strict.count(p)) throw std::invalid_argument("saturation_check: " + format_pair(p) + " not in rho^x");

  SaturationReport report;
  auto fail = [&](SaturationReport::Hypothesis h, IndexPair at, IndexPair req, const char* what) {
    report.failed = h;
    report.at = at;
    report.required = req;
    report.description = std::string(what) + ": " + format_pair(at) + " in S requires " + format_pair(req);
    return report;
  };
  const std::size_t n = q.size();
  for (const auto& [i, j] : s) {
    for (Index k = 0; k < n; ++k)
      if (k != i && q.contains(i, k) && !s.count({i, k}))
        return fail(SaturationReport::Hypothesis::RowClosure, {i, j}, {i, k}, "row closure fails");
    for (Index l = 0; l < n; ++l)
      if (l != j && q.contains(l, j) && !s.count({l, j}))
        return fail(SaturationReport::Hypothesis::ColumnClosure, {i, j}, {l, j}, "column closure fails");
    if (q.contains(j, i) && !s.count({j, i}))
      return fail(SaturationReport::Hypothesis::ReversePair, {i, j}, {j, i}, "reverse pair missing");
  }
  report.hypotheses_hold = true;

  const CentralPartition part = central_classes(q);
  std::set<std::size_t> touched;
  for (const auto& [i, j] : s) touched.insert(part.class_of[i]);
  report.classes_touched.assign(touched.begin(), touched.end());
  report.containment_holds = true;
  for (const auto& p : strict)
    if (touched.count(part.class_of[p.first]) && !s.count(p)) {
      report.containment_holds = false;
      report.description = "containment fails at " + format_pair(p);
    }
  if (report.containment_holds) report.description = "hypotheses hold; S contains rho^x on every touched class";
  return report;
}

}  // namespace smakit
