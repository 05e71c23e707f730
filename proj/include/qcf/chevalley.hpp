/**
 * @file chevalley.hpp
 * @brief Integral Chevalley basis of a simply-laced Lie algebra and the
 * decomposition of roots used for the adjoint representation.
 *
 * Structure constants follow the Frenkel-Kac sign cocycle: eps is bimultiplicative
 * on the root lattice with eps(a_i, a_i) = -1 and, for i != j, eps(a_i, a_j) = -1
 * exactly when i < j and a_ij = -1.
 */
#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qcf/lie.hpp"

namespace qcf {

// ---------------------------------------------------------------------------
// Root pairs summing to a root

inline bool root_leq(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// (b1, b2) >= (c1, c2) iff b1 >= c1 and b2 <= c2.
inline bool pair_geq(const std::pair<IntVec, IntVec>& b, const std::pair<IntVec, IntVec>& c) {
  return root_leq(c.first, b.first) && root_leq(b.second, c.second);
}

/// All (b1, b2) with b1, b2 weights of the adjoint module (roots or zero) and b1 + b2 = beta.
inline std::vector<std::pair<IntVec, IntVec>> psi_set(const RootData& rd, const IntVec& beta) {
  std::vector<IntVec> wts = rd.all_roots();
  wts.push_back(rd.zero());
  std::vector<std::pair<IntVec, IntVec>> out;
  for (const auto& a : wts) {
    IntVec b = beta;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] -= a[i];
    if (rd.is_root(b) || b == rd.zero()) out.emplace_back(a, b);
  }
  return out;
}

struct PsiResult {
  IntVec beta1, beta2;
  IntVec start1, start2;
};

/// A maximal element of Psi(beta) above (beta + a_i, -a_i) (beta > 0) or (a_i, beta - a_i) (beta < 0).
inline PsiResult psi_decompose(const RootData& rd, const IntVec& beta) {
  if (!rd.is_root(beta)) throw Error(Errc::NotARoot, "not a root: " + weight_str(beta));
  IntVec th = rd.highest_root(), mth = th;
  for (auto& x : mth) x = -x;
  if (beta == th || beta == mth) throw Error(Errc::OutOfDomain, "beta = +-theta has no decomposition");
  const bool pos = RootData::is_positive(beta);
  std::optional<std::pair<IntVec, IntVec>> start;
  for (int i = 1; i <= rd.rank && !start; ++i) {
    IntVec ai(rd.r(), 0);
    ai[i - 1] = 1;
    IntVec t = beta;
    if (pos) {
      t[i - 1] += 1;
      if (rd.is_root(t)) {
        IntVec m = ai;
        for (auto& x : m) x = -x;
        start = std::make_pair(t, m);
      }
    } else {
      t[i - 1] -= 1;
      if (rd.is_root(t)) start = std::make_pair(ai, t);
    }
  }
  if (!start) throw Error(Errc::Internal, "no starting pair");
  auto best = *start;
  for (const auto& p : psi_set(rd, beta))
    if (pair_geq(p, *start) && RootData::height(p.first) > RootData::height(best.first)) best = p;
  return PsiResult{best.first, best.second, start->first, start->second};
}

struct PsiCheck {
  bool maximal = false;  // beta1 is not <= beta1' for any other pair
  bool nonzero = false;
  std::size_t psi_size = 0;
};

inline PsiCheck psi_verify(const RootData& rd, const IntVec& beta, const PsiResult& r) {
  PsiCheck c;
  auto all = psi_set(rd, beta);
  c.psi_size = all.size();
  c.maximal = true;
  for (const auto& p : all) {
    if (p.first == r.beta1 && p.second == r.beta2) continue;
    if (root_leq(r.beta1, p.first)) c.maximal = false;
  }
  c.nonzero = r.beta1 != rd.zero() && r.beta2 != rd.zero();
  return c;
}

// ---------------------------------------------------------------------------
// Chevalley basis

/// Element of g over Z: coordinates on (e_alpha for alpha in all_roots()) followed by h_1..h_r.
using LieVec = std::vector<Int>;

class ChevalleyAlgebra {
 public:
  explicit ChevalleyAlgebra(const RootData& rd) : rd_(rd), roots_(rd.all_roots()) {
    for (int i = 0; i < rd.rank; ++i)
      for (int j = 0; j < rd.rank; ++j)
        if (rd.cartan[i][j] != rd.cartan[j][i]) throw Error(Errc::Internal, "Chevalley checks need a simply-laced type");
    for (std::size_t k = 0; k < roots_.size(); ++k) index_[roots_[k]] = k;
  }

  std::size_t dim() const { return roots_.size() + rd_.r(); }
  const std::vector<IntVec>& roots() const { return roots_; }
  std::size_t root_index(const IntVec& a) const { return index_.at(a); }
  std::size_t h_index(int i) const { return roots_.size() + static_cast<std::size_t>(i - 1); }

  Int eps(const IntVec& a, const IntVec& b) const {
    long long neg = 0;
    for (int i = 0; i < rd_.rank; ++i)
      for (int j = 0; j < rd_.rank; ++j) {
        bool minus = i == j || (i < j && rd_.cartan[i][j] == -1);
        if (minus) neg += a[i] * b[j];
      }
    return (neg % 2 == 0) ? 1 : -1;
  }

  Int form(const IntVec& a, const IntVec& b) const {
    Int s = 0;
    for (int i = 0; i < rd_.rank; ++i)
      for (int j = 0; j < rd_.rank; ++j) s += a[i] * rd_.cartan[i][j] * b[j];
    return s;
  }

  LieVec basis(std::size_t k) const {
    LieVec v(dim(), 0);
    v[k] = 1;
    return v;
  }

  /// Bracket of two basis elements.
  LieVec bracket_basis(std::size_t x, std::size_t y) const {
    LieVec out(dim(), 0);
    const std::size_t nr = roots_.size();
    auto hvec = [&](std::size_t k) {
      IntVec h(rd_.r(), 0);
      h[k - nr] = 1;
      return h;
    };
    if (x >= nr && y >= nr) return out;
    if (x >= nr) {
      out[y] = form(hvec(x), roots_[y]);
      return out;
    }
    if (y >= nr) {
      out[x] = -form(hvec(y), roots_[x]);
      return out;
    }
    const IntVec& a = roots_[x];
    const IntVec& b = roots_[y];
    IntVec s = a;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
    if (s == rd_.zero()) {
      for (int i = 0; i < rd_.rank; ++i) out[nr + i] = -a[i];
      return out;
    }
    auto it = index_.find(s);
    if (it != index_.end()) out[it->second] = eps(a, b);
    return out;
  }

  LieVec bracket(const LieVec& x, const LieVec& y) const {
    LieVec out(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j] == 0) continue;
        LieVec b = bracket_basis(i, j);
        for (std::size_t k = 0; k < dim(); ++k) out[k] += x[i] * y[j] * b[k];
      }
    }
    return out;
  }

  bool jacobi(std::size_t a, std::size_t b, std::size_t c) const {
    LieVec x = basis(a), y = basis(b), z = basis(c);
    LieVec s1 = bracket(x, bracket(y, z)), s2 = bracket(y, bracket(z, x)), s3 = bracket(z, bracket(x, y));
    for (std::size_t k = 0; k < dim(); ++k)
      if (s1[k] + s2[k] + s3[k] != 0) return false;
    return true;
  }

 private:
  const RootData& rd_;
  std::vector<IntVec> roots_;
  std::map<IntVec, std::size_t> index_;
};

struct Witness {
  IntVec beta;
  int i = 0;
  int eps = 0;        // sign of the simple root used
  int eps_prime = 0;  // scalar on the simple root vector
  bool found = false;
};

struct ChevalleyReport {
  std::vector<Witness> root_witnesses;
  std::vector<std::pair<int, int>> cartan_witnesses;  // (i, sign) with [sign e_{a_i}, e_{-a_i}] = h_i; sign 0 if none
  bool hh_zero = true;
  std::size_t jacobi_exhaustive = 0, jacobi_failures = 0;
  std::size_t jacobi_sampled = 0, jacobi_sampled_failures = 0;
  bool ok() const {
    for (const auto& w : root_witnesses)
      if (!w.found) return false;
    for (const auto& c : cartan_witnesses)
      if (c.second == 0) return false;
    return hh_zero && jacobi_failures == 0 && jacobi_sampled_failures == 0;
  }
};

inline ChevalleyReport chevalley_checks(const RootData& rd, std::size_t samples = 200, unsigned seed = 12345,
                                        bool exhaustive = true) {
  ChevalleyAlgebra g(rd);
  ChevalleyReport rep;
  // (i) [eps' e_{eps a_i}, e_{beta - eps a_i}] = e_beta
  for (const auto& beta : g.roots()) {
    Witness w;
    w.beta = beta;
    for (int i = 1; i <= rd.rank && !w.found; ++i)
      for (int e : {1, -1}) {
        if (w.found) break;
        IntVec ai(rd.r(), 0);
        ai[i - 1] = e;
        IntVec rest = beta;
        for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= ai[k];
        if (!rd.is_root(rest)) continue;
        LieVec b = g.bracket_basis(g.root_index(ai), g.root_index(rest));
        for (int ep : {1, -1}) {
          LieVec target = g.basis(g.root_index(beta));
          bool eq = true;
          for (std::size_t k = 0; k < g.dim(); ++k)
            if (ep * b[k] != target[k]) eq = false;
          if (eq) {
            w.i = i;
            w.eps = e;
            w.eps_prime = ep;
            w.found = true;
            break;
          }
        }
      }
    rep.root_witnesses.push_back(w);
  }
  // (ii) h_i = [eps e_{a_i}, e_{-a_i}]
  for (int i = 1; i <= rd.rank; ++i) {
    IntVec ai(rd.r(), 0), mai(rd.r(), 0);
    ai[i - 1] = 1;
    mai[i - 1] = -1;
    LieVec b = g.bracket_basis(g.root_index(ai), g.root_index(mai));
    int sign = 0;
    for (int ep : {1, -1}) {
      LieVec t = g.basis(g.h_index(i));
      bool eq = true;
      for (std::size_t k = 0; k < g.dim(); ++k)
        if (ep * b[k] != t[k]) eq = false;
      if (eq) sign = ep;
    }
    rep.cartan_witnesses.emplace_back(i, sign);
  }
  // (iii) t_i^* o [ , ] restricted to h (x) h
  for (int k = 1; k <= rd.rank; ++k)
    for (int l = 1; l <= rd.rank; ++l) {
      LieVec b = g.bracket_basis(g.h_index(k), g.h_index(l));
      for (int i = 1; i <= rd.rank; ++i)
        if (b[g.h_index(i)] != 0) rep.hh_zero = false;
    }
  if (exhaustive) {
    const std::size_t n = g.dim();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
          ++rep.jacobi_exhaustive;
          if (!g.jacobi(a, b, c)) ++rep.jacobi_failures;
        }
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.dim() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    ++rep.jacobi_sampled;
    if (!g.jacobi(pick(rng), pick(rng), pick(rng))) ++rep.jacobi_sampled_failures;
  }
  return rep;
}

}  // namespace qcf
