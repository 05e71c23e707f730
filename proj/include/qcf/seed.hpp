/**
 * @file seed.hpp
 * @brief Seeds (vertex data, exchange matrix Btilde, form Lambda), validity checks
 * and mutation of (Btilde, Lambda).
 */
#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcf/qtorus.hpp"

namespace qcf {

inline Int pos_part(Int x) { return x > 0 ? x : 0; }

/// Seed data. Vertices are kept in ascending label order; Btilde has one
/// column per unfrozen vertex, in that same order.
struct Seed {
  std::vector<int> ids;
  std::vector<bool> frozen;
  std::vector<int> d;
  IntMat B;
  IntMat Lambda;
  std::vector<std::string> labels;

  // Derived by finalize().
  std::vector<std::size_t> uf;  // positions of unfrozen vertices
  std::vector<int> col;         // position -> column index, -1 if frozen

  std::size_t size() const { return ids.size(); }
  std::size_t nuf() const { return uf.size(); }

  /// Position of a vertex label.
  std::size_t pos(int id) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) throw Error(Errc::BadVertex, "no vertex " + std::to_string(id));
    return static_cast<std::size_t>(it - ids.begin());
  }
  /// Position of an unfrozen vertex label.
  std::size_t upos(int id) const {
    std::size_t p = pos(id);
    if (frozen[p]) throw Error(Errc::BadVertex, "vertex " + std::to_string(id) + " is frozen");
    return p;
  }
  /// b_{ij} for positions i, j with j unfrozen.
  Int b(std::size_t i, std::size_t j) const { return B[i][static_cast<std::size_t>(col[j])]; }
  bool is_quantum() const {
    for (const auto& r : Lambda)
      for (Int x : r)
        if (x != 0) return true;
    return false;
  }

  /// Recomputes derived indices and validates shapes.
  void finalize() {
    const std::size_t n = ids.size();
    if (!std::is_sorted(ids.begin(), ids.end()) || std::adjacent_find(ids.begin(), ids.end()) != ids.end())
      throw Error(Errc::BadVertex, "vertex labels must be distinct and ascending");
    if (frozen.size() != n || d.size() != n) throw Error(Errc::BadVertex, "vertex data length mismatch");
    if (labels.size() < n) labels.resize(n);
    uf.clear();
    col.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i)
      if (!frozen[i]) {
        col[i] = static_cast<int>(uf.size());
        uf.push_back(i);
      }
    if (B.size() != n) throw Error(Errc::BadVertex, "Btilde must have one row per vertex");
    for (const auto& r : B)
      if (r.size() != uf.size()) throw Error(Errc::BadVertex, "Btilde must have one column per unfrozen vertex");
    if (Lambda.empty()) Lambda.assign(n, IntVec(n, 0));
    if (Lambda.size() != n) throw Error(Errc::BadVertex, "Lambda must be square of size |I|");
    for (const auto& r : Lambda)
      if (r.size() != n) throw Error(Errc::BadVertex, "Lambda must be square of size |I|");
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] <= 0) throw Error(Errc::BadVertex, "symmetrizers must be positive");
      if (Lambda[i][i] != 0) throw Error(Errc::Incompatible, "Lambda must have zero diagonal");
      for (std::size_t j = 0; j < n; ++j)
        if (Lambda[i][j] != -Lambda[j][i]) throw Error(Errc::Incompatible, "Lambda must be skew-symmetric");
    }
  }
};

inline Seed make_seed(std::vector<int> ids, std::vector<bool> frozen, std::vector<int> d, IntMat B, IntMat Lambda,
                      std::vector<std::string> labels = {}) {
  Seed s{std::move(ids), std::move(frozen), std::move(d), std::move(B), std::move(Lambda), std::move(labels), {}, {}};
  s.finalize();
  return s;
}

/// Checks d_i b_ij = -d_j b_ji on I_uf; returns the first violating pair.
inline std::optional<std::pair<int, int>> skew_symmetrizability_violation(const Seed& s) {
  for (std::size_t i : s.uf)
    for (std::size_t j : s.uf)
      if (s.d[i] * s.b(i, j) != -s.d[j] * s.b(j, i)) return std::make_pair(s.ids[i], s.ids[j]);
  return std::nullopt;
}

struct CompatResult {
  bool ok = false;
  std::vector<Int> dprime;  // per unfrozen column
  int bad_i = 0, bad_k = 0;  // first violated (i,k) by label when !ok
};

/// Computes Lambda * Btilde and checks it equals -diag(d') with d' > 0.
inline CompatResult check_compatible(const Seed& s) {
  CompatResult r;
  r.dprime.assign(s.nuf(), 0);
  for (std::size_t c = 0; c < s.nuf(); ++c) {
    std::size_t k = s.uf[c];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Int v = 0;
      for (std::size_t j = 0; j < s.size(); ++j) v += s.Lambda[i][j] * s.B[j][c];
      bool good = (i == k) ? (v < 0) : (v == 0);
      if (!good) {
        r.bad_i = s.ids[i];
        r.bad_k = s.ids[k];
        return r;
      }
      if (i == k) r.dprime[c] = -v;
    }
  }
  r.ok = true;
  return r;
}

inline bool full_rank(const Seed& s) {
  try {
    Dominance dom(s.B);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::RankError) return false;
    throw;
  }
}

/// Unfrozen vertices whose Btilde column is zero.
inline std::vector<int> isolated_vertices(const Seed& s) {
  std::vector<int> out;
  for (std::size_t c = 0; c < s.nuf(); ++c) {
    bool zero = true;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s.B[i][c] != 0) zero = false;
    if (zero) out.push_back(s.ids[s.uf[c]]);
  }
  return out;
}

/// Refuses a seed with an isolated unfrozen vertex over a ring where 2 is a zero divisor.
inline void check_assumption(const Seed& s, bool two_is_zero_divisor, const std::string& ring_name) {
  if (!two_is_zero_divisor) return;
  auto iso = isolated_vertices(s);
  if (!iso.empty())
    throw Error(Errc::AssumptionViolated, "vertex " + std::to_string(iso[0]) + " is isolated and 2 is a zero divisor in " +
                                              ring_name);
}

/// Matrix of psi_k in the f-basis; column i is psi_k(f_i).
inline IntMat psi_map(const Seed& s, int k_id) {
  std::size_t k = s.upos(k_id);
  const std::size_t n = s.size();
  IntMat P(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) P[i][i] = 1;
  P[k][k] = -1;
  for (std::size_t j = 0; j < n; ++j)
    if (j != k) P[j][k] = pos_part(-s.b(j, k));
  return P;
}

inline Seed mutate_matrices(const Seed& s, int k_id) {
  std::size_t k = s.upos(k_id);
  const std::size_t n = s.size();
  Seed t = s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < s.nuf(); ++c) {
      std::size_t j = s.uf[c];
      if (i == k || j == k) {
        t.B[i][c] = -s.B[i][c];
      } else {
        Int bik = s.b(i, k), bkj = s.b(k, j);
        t.B[i][c] = s.B[i][c] + pos_part(bik) * pos_part(bkj) - pos_part(-bik) * pos_part(-bkj);
      }
    }
  IntMat P = psi_map(s, k_id);
  // Lambda' = P^T Lambda P
  IntMat LP(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int v = 0;
      for (std::size_t l = 0; l < n; ++l) v += s.Lambda[i][l] * P[l][j];
      LP[i][j] = v;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int v = 0;
      for (std::size_t l = 0; l < n; ++l) v += P[l][i] * LP[l][j];
      t.Lambda[i][j] = v;
    }
  return t;
}

inline Seed mutate_matrices(const Seed& s, const std::vector<int>& seq) {
  Seed t = s;
  for (int k : seq) t = mutate_matrices(t, k);
  return t;
}

/// Finds sigma (on positions, identity on frozen vertices) with
/// Btilde'(sigma i, sigma k) = Btilde(i,k), Lambda'(sigma i, sigma j) = Lambda(i,j), d'(sigma i) = d(i).
/// An optional extra predicate restricts which unfrozen i may map to which j.
inline std::optional<std::vector<std::size_t>> seeds_equal_up_to_permutation(
    const Seed& a, const Seed& b, const std::function<bool(std::size_t, std::size_t)>& allow = {}) {
  const std::size_t n = a.size();
  if (b.size() != n || a.nuf() != b.nuf()) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.frozen[i] != b.frozen[i]) return std::nullopt;
    if (a.frozen[i] && a.d[i] != b.d[i]) return std::nullopt;
  }
  std::vector<std::size_t> sigma(n);
  std::vector<bool> assigned(n, false), used(n, false);
  for (std::size_t i = 0; i < n; ++i)
    if (a.frozen[i]) {
      sigma[i] = i;
      assigned[i] = true;
      used[i] = true;
    }
  if (a.Lambda != IntMat() && b.Lambda != IntMat()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a.frozen[i] && a.frozen[j] && a.Lambda[i][j] != b.Lambda[i][j]) return std::nullopt;
  }
  auto consistent = [&](std::size_t k, std::size_t sk) {
    if (a.d[k] != b.d[sk]) return false;
    if (allow && !allow(k, sk)) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!assigned[i]) continue;
      std::size_t si = sigma[i];
      if (a.b(i, k) != b.b(si, sk)) return false;
      if (!a.frozen[i] && a.b(k, i) != b.b(sk, si)) return false;
      if (a.Lambda[i][k] != b.Lambda[si][sk]) return false;
    }
    // column restricted to frozen rows must match exactly
    return true;
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t t) -> bool {
    if (t == a.nuf()) return true;
    std::size_t k = a.uf[t];
    for (std::size_t sk : b.uf) {
      if (used[sk]) continue;
      sigma[k] = sk;
      if (!consistent(k, sk)) continue;
      assigned[k] = true;
      used[sk] = true;
      if (b.b(sk, sk) == a.b(k, k) && rec(t + 1)) return true;
      assigned[k] = false;
      used[sk] = false;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return sigma;
}

/// Principal-coefficient quantum seed for a skew-symmetrizable B with symmetrizers d:
/// Btilde = [B; I], Lambda = [[0, -D], [D, -DB]]. Unfrozen labels 1..n, frozen n+1..2n.
inline Seed principal_seed(const IntMat& B, const std::vector<int>& d, bool quantum = true) {
  const std::size_t n = B.size();
  std::vector<int> ids(2 * n), dd(2 * n);
  std::vector<bool> fr(2 * n);
  IntMat Bt(2 * n, IntVec(n, 0)), L(2 * n, IntVec(2 * n, 0));
  for (std::size_t i = 0; i < 2 * n; ++i) {
    ids[i] = static_cast<int>(i + 1);
    fr[i] = i >= n;
    dd[i] = d[i % n];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) Bt[i][j] = B[i][j];
    Bt[n + i][i] = 1;
  }
  if (quantum) {
    for (std::size_t i = 0; i < n; ++i) {
      L[i][n + i] = -d[i];
      L[n + i][i] = d[i];
      for (std::size_t j = 0; j < n; ++j) L[n + i][n + j] = -d[i] * B[i][j];
    }
  }
  return make_seed(ids, fr, dd, Bt, L);
}

/// Exchange matrix from a Cartan matrix: b_ij = -c_ij for i < j, c_ij for i > j.
inline IntMat exchange_from_cartan(const IntMat& C) {
  const std::size_t n = C.size();
  IntMat B(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i < j)
        B[i][j] = -C[i][j];
      else if (i > j)
        B[i][j] = C[i][j];
  return B;
}

}  // namespace qcf
