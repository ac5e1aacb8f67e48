#pragma once

// Idempotent calculus and inner diagonalization: conjugating a commuting
// family of idempotents of A_rho to diagonal form by an invertible element
// of A_rho itself.

#include <smakit/linalg.hpp>
#include <smakit/random.hpp>
#include <smakit/sma.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smakit {

class NotIdempotent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Relations of an idempotent p with an element a under the normalized
/// Jordan product, each side computed directly so the equivalences can be
/// checked rather than assumed.
struct JordanRelationReport {
  bool circle_is_zero = false;     // p o a == 0
  bool annihilates = false;        // pa == ap == pap == 0
  bool circle_is_a = false;        // p o a == a
  bool absorbs = false;            // pa == ap == pap == a
  bool a_is_idempotent = false;
  // Only meaningful for idempotent a.
  bool orthogonal = false;         // pa == ap == 0
  bool below = false;              // p <= a, i.e. pa == ap == p
  bool circle_is_p = false;        // p o a == p

  bool zero_equivalence_holds() const { return circle_is_zero == annihilates; }
  bool identity_equivalence_holds() const { return circle_is_a == absorbs; }
  bool orthogonality_equivalence_holds() const { return !a_is_idempotent || orthogonal == circle_is_zero; }
  bool order_equivalence_holds() const { return !a_is_idempotent || below == circle_is_p; }
  bool all_hold() const {
    return zero_equivalence_holds() && identity_equivalence_holds() && orthogonality_equivalence_holds() &&
           order_equivalence_holds();
  }
};

inline JordanRelationReport jordan_idempotent_tests(const Matrix& p, const Matrix& a) {
  p.require_compatible(a);
  if (!is_idempotent(p)) throw NotIdempotent("p is not idempotent");
  const Matrix pa = p * a;
  const Matrix ap = a * p;
  const Matrix pap = pa * p;
  const Matrix circ = product(ProductKind::Circle, p, a);
  JordanRelationReport r;
  r.circle_is_zero = circ.is_zero();
  r.annihilates = pa.is_zero() && ap.is_zero() && pap.is_zero();
  r.circle_is_a = circ == a;
  r.absorbs = pa == a && ap == a && pap == a;
  r.a_is_idempotent = is_idempotent(a);
  if (r.a_is_idempotent) {
    r.orthogonal = pa.is_zero() && ap.is_zero();
    r.below = pa == p && ap == p;
    r.circle_is_p = circ == p;
  }
  return r;
}

class InvalidFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DiagonalizationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pairwise commuting idempotents of an SMA.
class IdempotentFamily {
 public:
  IdempotentFamily(Sma algebra, std::vector<Matrix> members) : algebra_(std::move(algebra)), members_(std::move(members)) {
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (!algebra_.contains(members_[k])) throw InvalidFamily("member " + std::to_string(k + 1) + " is outside A_rho");
      if (!is_idempotent(members_[k])) throw InvalidFamily("member " + std::to_string(k + 1) + " is not idempotent");
      for (std::size_t l = 0; l < k; ++l)
        if (!(members_[k] * members_[l] == members_[l] * members_[k]))
          throw InvalidFamily("members " + std::to_string(l + 1) + " and " + std::to_string(k + 1) + " do not commute");
    }
  }

  const Sma& algebra() const { return algebra_; }
  const std::vector<Matrix>& members() const { return members_; }

 private:
  Sma algebra_;
  std::vector<Matrix> members_;
};

struct Diagonalizer {
  Matrix s;
  Matrix s_inverse;
  /// s * members[k] * s_inverse, each a 0/1 diagonal matrix.
  std::vector<Matrix> targets;
};

namespace detail {

struct JointEigenspace {
  Matrix projection;
  std::vector<bool> signature;         // membership in each family member's range
  std::vector<std::size_t> class_rank; // rank of P_C * projection per central class
};

inline std::vector<JointEigenspace> joint_eigenspaces(const IdempotentFamily& f) {
  const Sma& a = f.algebra();
  const std::size_t n = a.size();
  std::vector<JointEigenspace> atoms{{Matrix::identity(n, a.field()), {}, {}}};
  for (const auto& p : f.members()) {
    const Matrix complement = Matrix::identity(n, a.field()) - p;
    std::vector<JointEigenspace> next;
    for (const auto& atom : atoms)
      for (bool inside : {false, true}) {
        Matrix e = atom.projection * (inside ? p : complement);
        if (e.is_zero()) continue;
        auto sig = atom.signature;
        sig.push_back(inside);
        next.push_back({std::move(e), std::move(sig), {}});
      }
    atoms = std::move(next);
  }
  const auto centre = a.center_basis();
  for (auto& atom : atoms)
    for (const auto& pc : centre) atom.class_rank.push_back(exact_rank(pc * atom.projection));
  return atoms;
}

/// Calls visit(assignment) for every map position -> atom whose per-class
/// counts match class_rank, in lexicographic order of the atom sequence.
/// Stops when visit returns true.
template <typename Visit>
bool for_each_assignment(const std::vector<JointEigenspace>& atoms, const CentralPartition& part, Visit&& visit) {
  const std::size_t n = part.class_of.size();
  std::vector<std::vector<std::size_t>> remaining(part.classes.size(), std::vector<std::size_t>(atoms.size()));
  for (std::size_t s = 0; s < atoms.size(); ++s)
    for (std::size_t c = 0; c < part.classes.size(); ++c) remaining[c][s] = atoms[s].class_rank[c];
  std::vector<std::size_t> assignment(n);
  auto recurse = [&](auto&& self, Index pos) -> bool {
    if (pos == n) return visit(assignment);
    const std::size_t c = part.class_of[pos];
    for (std::size_t s = 0; s < atoms.size(); ++s) {
      if (remaining[c][s] == 0) continue;
      --remaining[c][s];
      assignment[pos] = s;
      const bool done = self(self, pos + 1);
      ++remaining[c][s];
      if (done) return true;
    }
    return false;
  };
  return recurse(recurse, 0);
}

}  // namespace detail

/// Finds S in A_rho^x with S F S^{-1} diagonal. For each admissible placement
/// of the joint eigenspaces on the diagonal (lexicographic order), solves the
/// linear system S P_k = D_k S over A_rho and draws integer combinations of
/// its solution basis until one is invertible (64 draws per placement). The
/// result is re-verified before it is returned.
inline Diagonalizer inner_diagonalize(const IdempotentFamily& f, std::uint64_t seed) {
  const Sma& a = f.algebra();
  const std::size_t n = a.size();
  const FieldDescriptor& field = a.field();
  const Matrix id = Matrix::identity(n, field);

  auto check = [&](const Matrix& s, const Matrix& s_inv) -> std::optional<Diagonalizer> {
    Diagonalizer d{s, s_inv, {}};
    for (const auto& p : f.members()) {
      Matrix t = s * p * s_inv;
      if (!t.is_diagonal()) return std::nullopt;
      for (Index i = 0; i < n; ++i)
        if (!t(i, i).is_zero() && !t(i, i).is_one()) return std::nullopt;
      d.targets.push_back(std::move(t));
    }
    if (!a.contains(s) || !(s * s_inv == id)) return std::nullopt;
    return d;
  };

  bool all_diagonal = true;
  for (const auto& p : f.members()) all_diagonal = all_diagonal && p.is_diagonal();
  if (all_diagonal) {
    if (auto d = check(id, id)) return *d;
  }

  const auto atoms = detail::joint_eigenspaces(f);
  const std::vector<IndexPair> unknowns = [&] {
    const PairSet ps = a.order().pairs();
    return std::vector<IndexPair>(ps.begin(), ps.end());
  }();
  std::vector<std::vector<std::size_t>> column_of(n, std::vector<std::size_t>(n, unknowns.size()));
  for (std::size_t u = 0; u < unknowns.size(); ++u) column_of[unknowns[u].first][unknowns[u].second] = u;

  Rng rng(seed);
  std::optional<Diagonalizer> result;
  detail::for_each_assignment(atoms, a.classes(), [&](const std::vector<std::size_t>& assignment) {
    // S P_k - D_k S = 0 for each member k, entrywise, in the unknowns S_uv, (u,v) in rho.
    ScalarTable eqs(field, unknowns.size());
    for (std::size_t k = 0; k < f.members().size(); ++k) {
      const Matrix& p = f.members()[k];
      for (Index x = 0; x < n; ++x) {
        const bool dx = atoms[assignment[x]].signature[k];
        for (Index y = 0; y < n; ++y) {
          Row r(unknowns.size(), Scalar::zero(field));
          bool nonzero = false;
          for (Index z = 0; z < n; ++z) {
            const std::size_t col = column_of[x][z];
            if (col == unknowns.size() || p(z, y).is_zero()) continue;
            r[col] += p(z, y);
            nonzero = true;
          }
          if (dx && column_of[x][y] != unknowns.size()) {
            r[column_of[x][y]] -= Scalar::one(field);
            nonzero = true;
          }
          if (nonzero) eqs.add_row(std::move(r));
        }
      }
    }
    const auto basis = null_space(std::move(eqs));
    if (basis.empty()) return false;
    for (int draw = 0; draw < 64; ++draw) {
      const long bound = 1 + draw / 8;
      Matrix s(n, field);
      for (const auto& v : basis) {
        const Scalar coeff = draw == 0 ? Scalar::one(field) : Scalar::from_int(field, rng.uniform(-bound, bound));
        if (coeff.is_zero()) continue;
        for (std::size_t u = 0; u < unknowns.size(); ++u)
          if (!v[u].is_zero()) s.add_to(unknowns[u].first, unknowns[u].second, coeff * v[u]);
      }
      const auto s_inv = inverse(s);
      if (!s_inv) continue;
      if ((result = check(s, *s_inv))) return true;
    }
    return false;
  });
  if (!result) throw DiagonalizationFailure("inner diagonalization search exhausted its budget");
  return *result;
}

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Splits an idempotent P of A_rho supported in S x S into rank(P) mutually
/// orthogonal rank-one idempotents of A_rho, each supported in S x S, by
/// diagonalizing {P, I - P_S} inside A_rho.
inline std::vector<Matrix> rank_one_decompose(const Sma& a, const Matrix& p, const IndexSet& support, std::uint64_t seed = 0) {
  if (!a.contains(p)) throw PreconditionError("P is outside A_rho");
  if (!is_idempotent(p)) throw PreconditionError("P is not idempotent");
  if (!p.supported_in(support)) throw PreconditionError("P is not supported in S x S");
  const std::size_t n = a.size();
  const Matrix complement = Matrix::identity(n, a.field()) - a.idempotent(support);
  const Diagonalizer d = inner_diagonalize(IdempotentFamily(a, {p, complement}), seed);
  std::vector<Matrix> out;
  for (Index j = 0; j < n; ++j)
    if (d.targets[0](j, j).is_one()) out.push_back(d.s_inverse * Matrix::unit(n, a.field(), j, j) * d.s);

  // Postconditions.
  Matrix sum(n, a.field());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Matrix& q = out[k];
    if (!a.contains(q) || !is_idempotent(q) || exact_rank(q) != 1 || !q.supported_in(support))
      throw DiagonalizationFailure("rank-one piece " + std::to_string(k + 1) + " violates its postconditions");
    for (std::size_t l = 0; l < k; ++l)
      if (!(q * out[l]).is_zero() || !(out[l] * q).is_zero())
        throw DiagonalizationFailure("rank-one pieces are not orthogonal");
    sum = sum + q;
  }
  if (!(sum == p)) throw DiagonalizationFailure("rank-one pieces do not sum to P");
  return out;
}

}  // namespace smakit
