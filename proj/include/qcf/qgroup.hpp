/**
 * @file qgroup.hpp
 * @brief Explicit finite-dimensional U_q(g)-modules over Q(v) (v = q^{1/2}),
 * matrix coefficients, generalized quantum minors and exact identity checks.
 *
 * Conventions: K_i acts on weight nu by q^{(nu, alpha_i)} = v^{2 d_i nu_i};
 * Delta(E) = E (x) 1 + K (x) E, Delta(F) = F (x) K^{-1} + 1 (x) F;
 * S(E) = -K^{-1} E, S(F) = -F K. A functional on V1 (x) V2 is stored in the
 * coordinates of that tensor basis, so c1 c2 = c(xi2 (x) xi1, v1 (x) v2) is the
 * Kronecker product of the two coordinate vectors.
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcf/coeff.hpp"
#include "qcf/lie.hpp"

namespace qcf {

using SpVec = std::map<std::size_t, RatFunc>;
using SpOp = std::vector<SpVec>;  // column j: image of basis vector j

inline void axpy(SpVec& y, const RatFunc& a, const SpVec& x) {
  if (a.is_zero()) return;
  for (const auto& [j, c] : x) {
    auto it = y.find(j);
    RatFunc t = a * c;
    if (it == y.end()) {
      if (!t.is_zero()) y.emplace(j, std::move(t));
    } else {
      it->second += t;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

inline SpVec scaled(const SpVec& x, const RatFunc& a) {
  SpVec y;
  axpy(y, a, x);
  return y;
}

inline SpVec apply(const SpOp& A, const SpVec& x) {
  SpVec y;
  for (const auto& [j, c] : x) axpy(y, c, A[j]);
  return y;
}

inline RatFunc pair(const SpVec& xi, const SpVec& v) {
  RatFunc s;
  for (const auto& [j, c] : v) {
    auto it = xi.find(j);
    if (it != xi.end()) s += it->second * c;
  }
  return s;
}

inline SpVec unit_vec(std::size_t j) { return SpVec{{j, RatFunc(1)}}; }

inline RatFunc qn(long long n, int d) { return RatFunc(qint(n, d)); }

struct Module {
  std::shared_ptr<const RootData> rd;
  std::string name;
  std::vector<IntVec> wt;
  std::vector<std::string> names;
  std::vector<SpOp> E, F;  // by i - 1
  std::optional<std::size_t> highest;
  int span_height = 0;  // height of (highest - lowest weight), summed over tensor factors

  std::size_t dim() const { return wt.size(); }
  int rank() const { return rd->rank; }
  /// K_i^power eigenvalue on basis j.
  RatFunc k_eigen(int i, std::size_t j, int power = 1) const {
    return RatFunc(Laurent::vpow(2 * rd->d[i - 1] * static_cast<int>(wt[j][i - 1]) * power));
  }
  SpVec applyK(int i, const SpVec& x, int power = 1) const {
    SpVec y;
    for (const auto& [j, c] : x) y.emplace(j, c * k_eigen(i, j, power));
    return y;
  }
  SpVec applyE(int i, const SpVec& x) const { return apply(E[i - 1], x); }
  SpVec applyF(int i, const SpVec& x) const { return apply(F[i - 1], x); }
  std::optional<std::size_t> index_of(const std::string& n) const {
    for (std::size_t j = 0; j < names.size(); ++j)
      if (names[j] == n) return j;
    return std::nullopt;
  }
  std::vector<std::size_t> weight_space(const IntVec& mu) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < wt.size(); ++j)
      if (wt[j] == mu) out.push_back(j);
    return out;
  }
};
using ModulePtr = std::shared_ptr<const Module>;

inline Module empty_module(std::shared_ptr<const RootData> rd, std::string name, std::vector<IntVec> wt) {
  Module m;
  m.rd = std::move(rd);
  m.name = std::move(name);
  m.wt = std::move(wt);
  m.E.assign(m.rd->r(), SpOp(m.wt.size()));
  m.F.assign(m.rd->r(), SpOp(m.wt.size()));
  for (std::size_t j = 0; j < m.wt.size(); ++j) m.names.push_back("b" + std::to_string(j));
  return m;
}

inline void set_entry(SpOp& A, std::size_t to, std::size_t from, const RatFunc& c) {
  if (c.is_zero()) A[from].erase(to);
  else A[from][to] = c;
}

/// One-dimensional trivial module.
inline Module trivial_module(std::shared_ptr<const RootData> rd) {
  Module m = empty_module(rd, "trivial", {IntVec(rd->r(), 0)});
  m.names[0] = "1";
  m.highest = 0;
  return m;
}

inline bool is_minuscule(const RootData& rd, int i) {
  for (const auto& mu : rd.orbit(rd.fundamental_weight(i)))
    for (Int x : mu)
      if (x < -1 || x > 1) return false;
  return true;
}

/// V_q(varpi_i) for minuscule varpi_i: basis the Weyl orbit, all coefficients 1.
inline Module minuscule_module(std::shared_ptr<const RootData> rd, int i) {
  if (i < 1 || i > rd->rank || !is_minuscule(*rd, i))
    throw Error(Errc::NotMinuscule, "fundamental weight " + std::to_string(i) + " of " + rd->name() + " is not minuscule");
  const IntVec top = rd->fundamental_weight(i);
  auto orb = rd->orbit(top);
  std::stable_sort(orb.begin(), orb.end(), [&](const IntVec& a, const IntVec& b) {
    return *rd->height_if_leq(a, top) < *rd->height_if_leq(b, top);
  });
  Module m = empty_module(rd, "V(w" + std::to_string(i) + ")", orb);
  std::map<IntVec, std::size_t> pos;
  for (std::size_t j = 0; j < orb.size(); ++j) {
    pos[orb[j]] = j;
    m.names[j] = "v" + weight_str(orb[j]);
  }
  for (std::size_t j = 0; j < orb.size(); ++j)
    for (int a = 1; a <= rd->rank; ++a) {
      IntVec al = rd->simple_root_weight(a);
      if (orb[j][a - 1] == 1) {
        IntVec t = orb[j];
        for (std::size_t k = 0; k < t.size(); ++k) t[k] -= al[k];
        set_entry(m.F[a - 1], pos.at(t), j, RatFunc(1));
      }
      if (orb[j][a - 1] == -1) {
        IntVec t = orb[j];
        for (std::size_t k = 0; k < t.size(); ++k) t[k] += al[k];
        set_entry(m.E[a - 1], pos.at(t), j, RatFunc(1));
      }
    }
  m.highest = 0;
  m.span_height = static_cast<int>(*rd->height_if_leq(orb.back(), orb[0]));
  return m;
}

/// V_q(n varpi) for A1 with basis v_k = F^{(k)} v_0.
inline Module sl2_module(std::shared_ptr<const RootData> rd, int n) {
  if (rd->rank != 1) throw Error(Errc::Internal, "sl2_module needs type A1");
  std::vector<IntVec> wt;
  for (int k = 0; k <= n; ++k) wt.push_back(IntVec{n - 2 * k});
  Module m = empty_module(rd, "V(" + std::to_string(n) + "w)", wt);
  for (int k = 0; k <= n; ++k) {
    m.names[k] = "v" + std::to_string(k);
    if (k < n) set_entry(m.F[0], k + 1, k, qn(k + 1, 1));
    if (k > 0) set_entry(m.E[0], k - 1, k, qn(n - k + 1, 1));
  }
  m.highest = 0;
  m.span_height = n;
  return m;
}

/// Solves E-actions from relation (iii) when all weight spaces are one-dimensional
/// and the F-actions are given; basis must be listed with decreasing weights.
inline void solve_e_actions(Module& m) {
  const RootData& rd = *m.rd;
  std::map<IntVec, std::size_t> pos;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    if (pos.count(m.wt[j])) throw Error(Errc::Internal, "weight space of dimension > 1");
    pos[m.wt[j]] = j;
  }
  for (std::size_t j = 0; j < m.dim(); ++j)
    for (int i = 1; i <= rd.rank; ++i) {
      const SpVec& fj = m.F[i - 1][j];
      if (fj.empty()) continue;
      auto [lower, f] = *fj.begin();
      // E_i F_i b - F_i E_i b = [nu_i] b
      RatFunc rhs = qn(m.wt[j][i - 1], rd.d[i - 1]);
      for (const auto& [up, e] : m.E[i - 1][j]) {
        auto it = m.F[i - 1][up].find(j);
        if (it != m.F[i - 1][up].end()) rhs += e * it->second;
      }
      set_entry(m.E[i - 1], j, lower, rhs / f);
    }
}

/// The 7-dimensional G2 module V_q(varpi_1) on the canonical basis b_(m,n).
inline Module g2_module(std::shared_ptr<const RootData> rd) {
  if (rd->name() != "G2") throw Error(Errc::Internal, "g2_module needs type G2");
  std::vector<IntVec> wt{{1, 0}, {-1, 1}, {2, -1}, {0, 0}, {-2, 1}, {1, -1}, {-1, 0}};
  Module m = empty_module(rd, "M_q(G2)", wt);
  for (std::size_t j = 0; j < wt.size(); ++j) m.names[j] = "b" + weight_str(wt[j]);
  set_entry(m.F[0], 1, 0, RatFunc(1));
  set_entry(m.F[1], 2, 1, RatFunc(1));
  set_entry(m.F[0], 3, 2, RatFunc(1));
  set_entry(m.F[0], 4, 3, qn(2, 1));
  set_entry(m.F[1], 5, 4, RatFunc(1));
  set_entry(m.F[0], 6, 5, RatFunc(1));
  solve_e_actions(m);
  m.highest = 0;
  m.span_height = static_cast<int>(*rd->height_if_leq(wt.back(), wt[0]));
  return m;
}

/// V_q(theta) on the basis {X_alpha} u {t_i}; X_alpha ordered by decreasing height.
inline Module adjoint_module(std::shared_ptr<const RootData> rd) {
  const RootData& R = *rd;
  auto roots = R.all_roots();
  std::stable_sort(roots.begin(), roots.end(), [](const IntVec& a, const IntVec& b) {
    return RootData::height(a) > RootData::height(b);
  });
  std::vector<IntVec> wt;
  std::vector<std::string> nm;
  std::map<IntVec, std::size_t> pos;
  std::size_t zero_at = 0;
  bool placed = false;
  for (const auto& a : roots) {
    if (!placed && RootData::height(a) < 0) {
      zero_at = wt.size();
      for (int i = 1; i <= R.rank; ++i) {
        wt.push_back(R.zero());
        nm.push_back("t" + std::to_string(i));
      }
      placed = true;
    }
    pos[a] = wt.size();
    wt.push_back(R.root_to_weight(a));
    nm.push_back("X" + weight_str(a));
  }
  Module m = empty_module(rd, "V(theta)", wt);
  m.names = nm;
  auto tpos = [&](int i) { return zero_at + static_cast<std::size_t>(i - 1); };
  for (int i = 1; i <= R.rank; ++i) {
    const int di = R.d[i - 1];
    for (const auto& a : roots) {
      auto s = R.root_string(i, a);
      std::size_t ja = pos.at(a);
      IntVec up = a, dn = a;
      up[i - 1] += 1;
      dn[i - 1] -= 1;
      if (s.p > 0) set_entry(m.E[i - 1], pos.at(up), ja, qn(s.q + 1, di));
      if (s.q > 0) set_entry(m.F[i - 1], pos.at(dn), ja, qn(s.p + 1, di));
    }
    IntVec ai(R.r(), 0), mai(R.r(), 0);
    ai[i - 1] = 1;
    mai[i - 1] = -1;
    set_entry(m.E[i - 1], tpos(i), pos.at(mai), RatFunc(1));
    set_entry(m.F[i - 1], tpos(i), pos.at(ai), RatFunc(1));
    for (int j = 1; j <= R.rank; ++j) {
      Int c = R.cartan[j - 1][i - 1];
      if (c == 0) continue;
      set_entry(m.E[i - 1], pos.at(ai), tpos(j), qn(c < 0 ? -c : c, R.d[j - 1]));
      set_entry(m.F[i - 1], pos.at(mai), tpos(j), qn(c < 0 ? -c : c, R.d[j - 1]));
    }
  }
  m.highest = 0;
  m.span_height = static_cast<int>(2 * RootData::height(R.highest_root()));
  return m;
}

inline Module tensor(const Module& A, const Module& B) {
  std::vector<IntVec> wt;
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (std::size_t b = 0; b < B.dim(); ++b) {
      IntVec w = A.wt[a];
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += B.wt[b][k];
      wt.push_back(w);
    }
  Module m = empty_module(A.rd, "(" + A.name + ")x(" + B.name + ")", wt);
  const std::size_t nb = B.dim();
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (std::size_t b = 0; b < nb; ++b) m.names[a * nb + b] = A.names[a] + "(x)" + B.names[b];
  for (int i = 1; i <= A.rank(); ++i)
    for (std::size_t a = 0; a < A.dim(); ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        std::size_t j = a * nb + b;
        // E (x) 1 + K (x) E
        for (const auto& [a2, c] : A.E[i - 1][a]) set_entry(m.E[i - 1], a2 * nb + b, j, c);
        RatFunc ka = A.k_eigen(i, a);
        for (const auto& [b2, c] : B.E[i - 1][b]) set_entry(m.E[i - 1], a * nb + b2, j, ka * c);
        // F (x) K^{-1} + 1 (x) F
        RatFunc kb = B.k_eigen(i, b, -1);
        for (const auto& [a2, c] : A.F[i - 1][a]) set_entry(m.F[i - 1], a2 * nb + b, j, c * kb);
        for (const auto& [b2, c] : B.F[i - 1][b]) set_entry(m.F[i - 1], a * nb + b2, j, c);
      }
  if (A.highest && B.highest) m.highest = *A.highest * nb + *B.highest;
  m.span_height = A.span_height + B.span_height;
  return m;
}

/// Dual module via the antipode: E* = (-K^{-1}E)^T, F* = (-FK)^T, weights negated.
inline Module dual(const Module& A) {
  std::vector<IntVec> wt;
  for (const auto& w : A.wt) {
    IntVec n = w;
    for (auto& x : n) x = -x;
    wt.push_back(n);
  }
  Module m = empty_module(A.rd, "(" + A.name + ")*", wt);
  for (std::size_t j = 0; j < A.dim(); ++j) m.names[j] = A.names[j] + "*";
  for (int i = 1; i <= A.rank(); ++i)
    for (std::size_t l = 0; l < A.dim(); ++l) {
      // column l of E: E e_l = sum_j E_{jl} e_j; (K^{-1}E)_{jl} = k^{-1}_j E_{jl}; transpose puts it at (l, j)
      for (const auto& [j, c] : A.E[i - 1][l]) set_entry(m.E[i - 1], l, j, -(A.k_eigen(i, j, -1) * c));
      for (const auto& [j, c] : A.F[i - 1][l]) set_entry(m.F[i - 1], l, j, -(c * A.k_eigen(i, l)));
    }
  m.span_height = A.span_height;
  return m;
}

inline Module direct_sum(const std::vector<const Module*>& parts) {
  std::vector<IntVec> wt;
  for (const auto* p : parts) wt.insert(wt.end(), p->wt.begin(), p->wt.end());
  Module m = empty_module(parts.at(0)->rd, "sum", wt);
  std::size_t off = 0;
  for (const auto* p : parts) {
    for (int i = 1; i <= p->rank(); ++i)
      for (std::size_t j = 0; j < p->dim(); ++j) {
        for (const auto& [k, c] : p->E[i - 1][j]) m.E[i - 1][off + j][off + k] = c;
        for (const auto& [k, c] : p->F[i - 1][j]) m.F[i - 1][off + j][off + k] = c;
      }
    off += p->dim();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Defining relations

struct RelationReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::size_t checks = 0;
};

inline RelationReport check_relations(const Module& m) {
  RelationReport rep;
  const RootData& rd = *m.rd;
  const int r = rd.rank;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    if (rep.failures.size() < 20) rep.failures.push_back(s);
  };
  // (ii) weight homogeneity
  for (int i = 1; i <= r; ++i) {
    IntVec al = rd.simple_root_weight(i);
    for (std::size_t j = 0; j < m.dim(); ++j) {
      for (const auto& [k, c] : m.E[i - 1][j]) {
        ++rep.checks;
        for (std::size_t t = 0; t < al.size(); ++t)
          if (m.wt[k][t] != m.wt[j][t] + al[t]) {
            fail("(ii) E" + std::to_string(i) + " on " + m.names[j]);
            break;
          }
      }
      for (const auto& [k, c] : m.F[i - 1][j]) {
        ++rep.checks;
        for (std::size_t t = 0; t < al.size(); ++t)
          if (m.wt[k][t] != m.wt[j][t] - al[t]) {
            fail("(ii) F" + std::to_string(i) + " on " + m.names[j]);
            break;
          }
      }
    }
  }
  // (iii)
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j)
      for (std::size_t l = 0; l < m.dim(); ++l) {
        ++rep.checks;
        SpVec e = unit_vec(l);
        SpVec lhs = m.applyE(i, m.applyF(j, e));
        axpy(lhs, RatFunc(-1), m.applyF(j, m.applyE(i, e)));
        if (i == j) axpy(lhs, -qn(m.wt[l][i - 1], rd.d[i - 1]), e);
        if (!lhs.empty()) fail("(iii) [E" + std::to_string(i) + ",F" + std::to_string(j) + "] on " + m.names[l]);
      }
  // (iv)
  for (int sgn = 0; sgn < 2; ++sgn)
    for (int i = 1; i <= r; ++i)
      for (int j = 1; j <= r; ++j) {
        if (i == j) continue;
        const long long n = 1 - rd.cartan[i - 1][j - 1];
        auto X = [&](int a, const SpVec& v) { return sgn == 0 ? m.applyE(a, v) : m.applyF(a, v); };
        for (std::size_t l = 0; l < m.dim(); ++l) {
          ++rep.checks;
          SpVec total;
          for (long long k = 0; k <= n; ++k) {
            SpVec v = unit_vec(l);
            for (long long t = 0; t < n - k; ++t) v = X(i, v);
            v = X(j, v);
            for (long long t = 0; t < k; ++t) v = X(i, v);
            RatFunc c(qbinom(n, k, rd.d[i - 1]));
            axpy(total, (k % 2 == 0) ? c : -c, v);
          }
          if (!total.empty())
            fail(std::string("(iv) ") + (sgn == 0 ? "E" : "F") + " Serre (" + std::to_string(i) + "," + std::to_string(j) +
                 ") on " + m.names[l]);
        }
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Words in the generators

struct Token {
  char kind = 'E';  // 'E', 'F', 'K'
  int i = 1;
  int n = 1;  // divided power for E/F, exponent +-1 for K
};
using GenWord = std::vector<Token>;

inline std::string word_str(const GenWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& t : w) {
    if (!s.empty()) s += " ";
    s += std::string(1, t.kind) + std::to_string(t.i);
    if (t.kind == 'K' && t.n != 1) s += "^" + std::to_string(t.n);
    if (t.kind != 'K' && t.n != 1) s += "^(" + std::to_string(t.n) + ")";
  }
  return s;
}

/// Parses tokens like "F1 E2^(2) K1^-1" (separated by spaces or '*').
inline GenWord parse_word(const std::string& text) {
  GenWord w;
  std::string tok;
  auto flush = [&] {
    if (tok.empty() || tok == "1") {
      tok.clear();
      return;
    }
    Token t;
    t.kind = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
    if (t.kind != 'E' && t.kind != 'F' && t.kind != 'K') throw Error(Errc::Parse, "bad generator '" + tok + "'");
    std::size_t p = 1;
    std::size_t q = p;
    while (q < tok.size() && std::isdigit(static_cast<unsigned char>(tok[q]))) ++q;
    if (q == p) throw Error(Errc::Parse, "missing index in '" + tok + "'");
    t.i = std::stoi(tok.substr(p, q - p));
    if (q < tok.size()) {
      std::string rest = tok.substr(q);
      if (rest[0] != '^') throw Error(Errc::Parse, "bad generator '" + tok + "'");
      rest = rest.substr(1);
      if (!rest.empty() && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
      try {
        t.n = std::stoi(rest);
      } catch (...) {
        throw Error(Errc::Parse, "bad exponent in '" + tok + "'");
      }
    }
    if (t.kind == 'K' && t.n != 1 && t.n != -1) throw Error(Errc::Parse, "K exponent must be 1 or -1");
    if (t.kind != 'K' && t.n < 0) throw Error(Errc::Parse, "negative divided power");
    w.push_back(t);
    tok.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '*' || c == ',') flush();
    else tok += c;
  }
  flush();
  return w;
}

/// Divided power X^(n) = X^n / [n]_{q_i}!.
inline SpVec apply_token(const Module& m, const Token& t, SpVec v) {
  if (t.i < 1 || t.i > m.rank()) throw Error(Errc::Parse, "generator index out of range");
  if (t.kind == 'K') return m.applyK(t.i, v, t.n);
  for (int k = 0; k < t.n; ++k) v = t.kind == 'E' ? m.applyE(t.i, v) : m.applyF(t.i, v);
  if (t.n > 1) v = scaled(v, RatFunc(qfactorial(t.n, m.rd->d[t.i - 1])).inverse());
  return v;
}

/// x.v for x = t_1 t_2 ... t_k (rightmost token acts first).
inline SpVec act(const Module& m, const GenWord& w, SpVec v) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = apply_token(m, *it, std::move(v));
  return v;
}

// ---------------------------------------------------------------------------
// Extremal vectors and minors

inline IntVec weight_of_highest(const Module& m) {
  if (!m.highest) throw Error(Errc::Internal, "module has no marked highest weight vector");
  return m.wt[*m.highest];
}

/// v_{w lambda} from the highest vector by divided powers of F along a reduced word of w.
inline SpVec extremal_vector(const Module& m, const WeylWord& w) {
  const RootData& rd = *m.rd;
  if (!rd.is_reduced(w)) throw Error(Errc::NotReduced, "word is not reduced");
  IntVec mu = weight_of_highest(m);
  SpVec v = unit_vec(*m.highest);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Int n = mu[*it - 1];
    if (n < 0) throw Error(Errc::NotReduced, "length does not increase along the word");
    v = apply_token(m, Token{'F', *it, static_cast<int>(n)}, v);
    mu = rd.reflect_weight(*it, mu);
  }
  return v;
}

struct MatrixCoeff {
  ModulePtr mod;
  SpVec xi;
  SpVec v;
  std::string label;
};

/// The dual vector xi_{w lambda} with <xi, v_{w lambda}> = 1.
inline SpVec extremal_dual(const Module& m, const WeylWord& w) {
  SpVec v = extremal_vector(m, w);
  IntVec mu = m.rd->apply_weight(w, weight_of_highest(m));
  auto ws = m.weight_space(mu);
  if (ws.size() != 1 || v.size() != 1 || v.begin()->first != ws[0])
    throw Error(Errc::Internal, "extremal weight space is not one-dimensional");
  return SpVec{{ws[0], v.begin()->second.inverse()}};
}

/// Delta_{w lambda, u lambda} = c(xi_{w lambda}, v_{u lambda}).
inline MatrixCoeff minor(const ModulePtr& m, const WeylWord& w, const WeylWord& u) {
  MatrixCoeff c{m, extremal_dual(*m, w), extremal_vector(*m, u), {}};
  const RootData& rd = *m->rd;
  IntVec lam = weight_of_highest(*m);
  c.label = "Delta_{" + weight_str(rd.apply_weight(w, lam)) + "," + weight_str(rd.apply_weight(u, lam)) + "}";
  return c;
}

inline MatrixCoeff minor_by_weights(const ModulePtr& m, const IntVec& gamma, const IntVec& delta) {
  IntVec lam = weight_of_highest(*m);
  auto w = m->rd->word_to_weight(lam, gamma);
  auto u = m->rd->word_to_weight(lam, delta);
  if (!w || !u) throw Error(Errc::Internal, "weights are not in the Weyl orbit of the highest weight");
  return minor(m, *w, *u);
}

inline RatFunc evaluate(const MatrixCoeff& c, const GenWord& x) { return pair(c.xi, act(*c.mod, x, c.v)); }

inline SpVec kron(const SpVec& a, const SpVec& b, std::size_t nb) {
  SpVec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out.emplace(i * nb + j, x * y);
  return out;
}

/// c1 c2 realized on V1 (x) V2.
inline MatrixCoeff product(const MatrixCoeff& a, const MatrixCoeff& b) {
  auto mod = std::make_shared<const Module>(tensor(*a.mod, *b.mod));
  std::size_t nb = b.mod->dim();
  return MatrixCoeff{mod, kron(a.xi, b.xi, nb), kron(a.v, b.v, nb), a.label + "*" + b.label};
}

/// The unit of the coordinate ring: the counit, c(1*, 1) on the trivial module.
inline MatrixCoeff unit_coeff(std::shared_ptr<const RootData> rd) {
  auto mod = std::make_shared<const Module>(trivial_module(rd));
  return MatrixCoeff{mod, unit_vec(0), unit_vec(0), "1"};
}

/// Linear combination of matrix coefficients.
struct CoeffCombo {
  std::vector<std::pair<RatFunc, MatrixCoeff>> terms;
  CoeffCombo() = default;
  explicit CoeffCombo(MatrixCoeff c) { terms.emplace_back(RatFunc(1), std::move(c)); }
  CoeffCombo& add(const RatFunc& s, MatrixCoeff c) {
    terms.emplace_back(s, std::move(c));
    return *this;
  }
  friend CoeffCombo operator-(CoeffCombo a, const CoeffCombo& b) {
    for (const auto& [s, c] : b.terms) a.terms.emplace_back(-s, c);
    return a;
  }
  RatFunc evaluate(const GenWord& x) const {
    RatFunc s;
    for (const auto& [a, c] : terms) s += a * qcf::evaluate(c, x);
    return s;
  }
};

struct SpanStats {
  std::size_t dimension = 0;
  std::size_t ambient = 0;
};

/// Basis of the submodule of m generated by v, echelonized per weight (pivot = smallest index).
inline std::vector<SpVec> span_closure(const Module& m, const SpVec& v) {
  std::map<IntVec, std::map<std::size_t, SpVec>> basis;
  std::vector<SpVec> queue, out;
  auto insert = [&](SpVec x) {
    if (x.empty()) return;
    auto& B = basis[m.wt[x.begin()->first]];
    while (!x.empty()) {
      auto [p, c] = *x.begin();
      auto it = B.find(p);
      if (it == B.end()) {
        x = scaled(x, c.inverse());
        B.emplace(p, x);
        queue.push_back(x);
        out.push_back(std::move(x));
        return;
      }
      axpy(x, -c, it->second);
    }
  };
  // weight components of v
  std::map<IntVec, SpVec> comps;
  for (const auto& [j, x] : v) comps[m.wt[j]].emplace(j, x);
  for (auto& [w, x] : comps) insert(x);
  while (!queue.empty()) {
    SpVec x = std::move(queue.back());
    queue.pop_back();
    for (int i = 1; i <= m.rank(); ++i) {
      insert(m.applyE(i, x));
      insert(m.applyF(i, x));
    }
  }
  return out;
}

/// Direct sum of the modules of a list of coefficients with the stacked functionals and vectors.
struct Stacked {
  Module sum;
  std::vector<SpVec> xi;  // one functional per input, in stacked coordinates
  SpVec v;
};

inline Stacked stack(const std::vector<const MatrixCoeff*>& cs) {
  std::vector<const Module*> parts;
  for (const auto* c : cs) parts.push_back(c->mod.get());
  Stacked s{direct_sum(parts), {}, {}};
  std::size_t off = 0;
  for (const auto* c : cs) {
    SpVec xi;
    for (const auto& [j, x] : c->xi) xi.emplace(off + j, x);
    for (const auto& [j, x] : c->v) s.v.emplace(off + j, x);
    s.xi.push_back(std::move(xi));
    off += c->mod->dim();
  }
  return s;
}

/// True when sum_k s_k c(xi_k, v_k) vanishes on U_q(g): the functional sum s_k xi_k
/// on the direct sum kills the submodule generated by the vector (v_k)_k.
inline bool coeff_is_zero(const CoeffCombo& cc, SpanStats* stats = nullptr) {
  if (cc.terms.empty()) return true;
  std::vector<const MatrixCoeff*> cs;
  for (const auto& t : cc.terms) cs.push_back(&t.second);
  Stacked st = stack(cs);
  SpVec xi;
  for (std::size_t k = 0; k < cs.size(); ++k) axpy(xi, cc.terms[k].first, st.xi[k]);
  auto basis = span_closure(st.sum, st.v);
  if (stats) {
    stats->ambient = st.sum.dim();
    stats->dimension = basis.size();
  }
  for (const auto& b : basis)
    if (!pair(xi, b).is_zero()) return false;
  return true;
}

/// Solves sum_t c_t unknown_t = target in the coordinate ring; nullopt when no solution exists.
/// Free parameters are set to zero.
inline std::optional<std::vector<RatFunc>> solve_combination(const std::vector<MatrixCoeff>& unknown, const CoeffCombo& target) {
  std::vector<const MatrixCoeff*> cs;
  for (const auto& u : unknown) cs.push_back(&u);
  for (const auto& t : target.terms) cs.push_back(&t.second);
  Stacked st = stack(cs);
  SpVec rhs_xi;
  for (std::size_t k = 0; k < target.terms.size(); ++k) axpy(rhs_xi, target.terms[k].first, st.xi[unknown.size() + k]);
  const std::size_t n = unknown.size();
  std::vector<std::vector<RatFunc>> rows;
  for (const auto& b : span_closure(st.sum, st.v)) {
    std::vector<RatFunc> row(n + 1);
    bool nz = false;
    for (std::size_t t = 0; t < n; ++t) {
      row[t] = pair(st.xi[t], b);
      nz = nz || !row[t].is_zero();
    }
    row[n] = pair(rhs_xi, b);
    if (nz || !row[n].is_zero()) rows.push_back(std::move(row));
  }
  // Gauss-Jordan
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    RatFunc inv = rows[r][c].inverse();
    for (auto& x : rows[r]) x = x * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      RatFunc f = rows[i][c];
      for (std::size_t j = c; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (!rows[i][n].is_zero()) return std::nullopt;
  std::vector<RatFunc> sol(n);
  for (std::size_t i = 0; i < r; ++i) sol[pivcol[i]] = rows[i][n];
  return sol;
}

inline bool coeff_equal(const CoeffCombo& a, const CoeffCombo& b, SpanStats* stats = nullptr) {
  return coeff_is_zero(a - b, stats);
}

/// All triangular words F_{j1}..F_{js} E_{i1}..E_{it} with s, t <= bound.
inline std::vector<GenWord> triangular_words(int rank, int bound) {
  std::vector<GenWord> mono{{}};
  std::vector<GenWord> eps{{}}, fps{{}};
  for (std::size_t t = 0; t < eps.size(); ++t) {
    if (static_cast<int>(eps[t].size()) >= bound) continue;
    for (int i = 1; i <= rank; ++i) {
      auto e = eps[t];
      e.push_back(Token{'E', i, 1});
      eps.push_back(e);
      auto f = fps[t];
      f.push_back(Token{'F', i, 1});
      fps.push_back(f);
    }
  }
  std::vector<GenWord> out;
  for (const auto& f : fps)
    for (const auto& e : eps) {
      GenWord w = f;
      w.insert(w.end(), e.begin(), e.end());
      out.push_back(std::move(w));
    }
  return out;
}

inline int word_bound(const CoeffCombo& c) {
  int b = 0;
  for (const auto& [s, m] : c.terms) b = std::max(b, m.mod->span_height);
  return b;
}

/// Equality by evaluation on triangular words up to the given per-sign bound.
inline bool coeff_equal_words(const CoeffCombo& a, const CoeffCombo& b, int bound, GenWord* witness = nullptr) {
  CoeffCombo d = a - b;
  for (const auto& w : triangular_words(d.terms.empty() ? 1 : d.terms[0].second.mod->rank(), bound))
    if (!d.evaluate(w).is_zero()) {
      if (witness) *witness = w;
      return false;
    }
  return true;
}

/// Module for V_q(varpi_i): minuscule, the G2 module, or the adjoint module when varpi_i = theta.
inline Module fundamental_module(std::shared_ptr<const RootData> rd, int i) {
  if (rd->rank == 1) return sl2_module(rd, 1);
  if (is_minuscule(*rd, i)) return minuscule_module(rd, i);
  if (rd->name() == "G2" && i == 1) return g2_module(rd);
  if (rd->root_to_weight(rd->highest_root()) == rd->fundamental_weight(i)) return adjoint_module(rd);
  throw Error(Errc::NotMinuscule, "no explicit module for fundamental weight " + std::to_string(i) + " of " + rd->name());
}


// ---------------------------------------------------------------------------
// G2: the embedding M -> M (x) M, the trivial vector and the minor identities

struct CheckItem {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct G2Report {
  std::vector<CheckItem> items;
  int word_bound = 0;
  bool ok() const {
    for (const auto& c : items)
      if (!c.ok) return false;
    return true;
  }
};

namespace g2 {

/// q^k as a rational function.
inline RatFunc Q(int k) { return RatFunc(qpow(k)); }
inline RatFunc two() { return qn(2, 1); }

struct Tables {
  std::shared_ptr<const Module> M, MM;
  std::vector<SpVec> btilde;  // images of the seven basis vectors, in basis order of M
  SpVec one;                  // the trivial vector
};

inline Tables build(std::shared_ptr<const RootData> rd) {
  Tables t;
  t.M = std::make_shared<const Module>(g2_module(rd));
  t.MM = std::make_shared<const Module>(tensor(*t.M, *t.M));
  const Module& M = *t.M;
  auto idx = [&](int m, int n) { return *M.index_of("b" + weight_str(IntVec{m, n})); };
  const std::size_t nb = M.dim();
  auto bb = [&](std::pair<int, int> a, std::pair<int, int> b) { return idx(a.first, a.second) * nb + idx(b.first, b.second); };
  using P = std::pair<int, int>;
  const P b10{1, 0}, bm11{-1, 1}, b2m1{2, -1}, b00{0, 0}, bm21{-2, 1}, b1m1{1, -1}, bm10{-1, 0};
  auto vec = [&](std::vector<std::tuple<RatFunc, P, P>> terms) {
    SpVec v;
    for (auto& [c, a, b] : terms) axpy(v, c, unit_vec(bb(a, b)));
    return v;
  };
  const RatFunc q2 = two();
  t.btilde.assign(nb, {});
  t.btilde[idx(1, 0)] = vec({{1, b10, b00}, {-(Q(1) * q2), bm11, b2m1}, {Q(4) * q2, b2m1, bm11}, {-Q(6), b00, b10}});
  t.btilde[idx(-1, 1)] = vec({{q2, b10, bm21}, {-Q(2), bm11, b00}, {Q(4), b00, bm11}, {-(Q(5) * q2), bm21, b10}});
  t.btilde[idx(2, -1)] = vec({{q2, b10, b1m1}, {-Q(2), b2m1, b00}, {Q(4), b00, b2m1}, {-(Q(5) * q2), b1m1, b10}});
  t.btilde[idx(0, 0)] = vec({{q2, b10, bm10},
                             {Q(-1) * q2, bm11, b1m1},
                             {-(Q(2) * q2), b2m1, bm21},
                             {Q(3) * (Q(1) - Q(-1)), b00, b00},
                             {Q(2) * q2, bm21, b2m1},
                             {-(Q(5) * q2), b1m1, bm11},
                             {-(Q(4) * q2), bm10, b10}});
  t.btilde[idx(-2, 1)] = vec({{q2, bm11, bm10}, {-Q(2), b00, bm21}, {Q(4), bm21, b00}, {-(Q(5) * q2), bm10, bm11}});
  t.btilde[idx(1, -1)] = vec({{q2, b2m1, bm10}, {-Q(2), b00, b1m1}, {Q(4), b1m1, b00}, {-(Q(5) * q2), bm10, b2m1}});
  t.btilde[idx(-1, 0)] = vec({{1, b00, bm10}, {-(Q(1) * q2), bm21, b1m1}, {Q(4) * q2, b1m1, bm21}, {-Q(6), bm10, b00}});
  t.one = vec({{Q(-6), b10, bm10},
               {-Q(-5), bm11, b1m1},
               {Q(-2), b2m1, bm21},
               {-q2.inverse(), b00, b00},
               {1, bm21, b2m1},
               {-Q(3), b1m1, bm11},
               {Q(4), bm10, b10}});
  return t;
}

}  // namespace g2

/// True when every coefficient of the combination lies in Z[v^{+-1}, (q^2+1)^{-1}].
inline bool coefficients_localized(const CoeffCombo& c) {
  const LocRing ring;
  for (const auto& [s, m] : c.terms)
    if (!ring.from_ratfunc(s)) return false;
  return true;
}

/// c^{M(x)M}(xi, T) rewritten as a combination of products c^M(.,.) c^M(.,.); a b(0,0)(x)b(0,0)
/// term is traded for the trivial vector when the functional kills b(0,0) in both slots.
inline CoeffCombo g2_expand(const g2::Tables& t, std::size_t xi1, std::size_t xi2, const SpVec& T, const RatFunc& scale,
                            bool trade_zero_weight) {
  const Module& M = *t.M;
  const std::size_t nb = M.dim();
  const std::size_t z = *M.index_of("b(0,0)");
  auto coeff = [&](std::size_t a, std::size_t b) { return MatrixCoeff{t.M, unit_vec(a), unit_vec(b), M.names[a] + "*," + M.names[b]}; };
  CoeffCombo out;
  auto add_vector = [&](const SpVec& v, const RatFunc& s) {
    for (const auto& [j, c] : v) out.add(s * c, product(coeff(xi1, j / nb), coeff(xi2, j % nb)));
  };
  SpVec rest = T;
  auto zz = rest.find(z * nb + z);
  if (trade_zero_weight && zz != rest.end()) {
    // b00 (x) b00 = [2] (R - 1~) with R = 1~ + b00(x)b00/[2]
    RatFunc c = zz->second;
    rest.erase(zz);
    SpVec R = t.one;
    R.erase(z * nb + z);
    add_vector(rest, scale);
    add_vector(R, scale * c * g2::two());
    RatFunc xi_one = pair(kron(unit_vec(xi1), unit_vec(xi2), nb), t.one);
    out.add(-(scale * c * g2::two() * xi_one), unit_coeff(M.rd));
    return out;
  }
  add_vector(rest, scale);
  return out;
}

inline G2Report verify_g2_identities(bool cross_check_words = true) {
  auto rd = std::make_shared<const RootData>(make_root_data("G2"));
  g2::Tables t = g2::build(rd);
  const Module& M = *t.M;
  const Module& MM = *t.MM;
  const std::size_t nb = M.dim();
  G2Report rep;
  auto rel = check_relations(M);
  rep.items.push_back({"module relations", rel.ok, rel.ok ? "" : rel.failures.front()});

  // (a) generators act on the b~ with the structure constants of M
  for (std::size_t j = 0; j < nb; ++j) {
    bool ok = true;
    std::string bad;
    for (int i = 1; i <= 2 && ok; ++i)
      for (char kind : {'E', 'F'}) {
        SpVec lhs = kind == 'E' ? MM.applyE(i, t.btilde[j]) : MM.applyF(i, t.btilde[j]);
        const SpVec& col = kind == 'E' ? M.E[i - 1][j] : M.F[i - 1][j];
        for (const auto& [k, c] : col) axpy(lhs, -c, t.btilde[k]);
        if (!lhs.empty()) {
          ok = false;
          bad = std::string(1, kind) + std::to_string(i);
          break;
        }
      }
    rep.items.push_back({"embedding " + M.names[j] + "~", ok, bad});
  }
  // (b) the trivial vector
  {
    bool ok = true;
    for (int i = 1; i <= 2; ++i) ok = ok && MM.applyE(i, t.one).empty() && MM.applyF(i, t.one).empty();
    rep.items.push_back({"X_i^+ 1~ = 0", ok, ""});
  }
  // (c) pairing with b(-1,0)* (x) b(1,0)*
  const std::size_t i10 = *M.index_of("b(1,0)"), im10 = *M.index_of("b(-1,0)"), i00 = *M.index_of("b(0,0)");
  const std::size_t im11 = *M.index_of("b(-1,1)"), i2m1 = *M.index_of("b(2,-1)");
  {
    RatFunc val = pair(kron(unit_vec(i10), unit_vec(im10), nb), t.one);
    bool ok = val == g2::Q(-6);
    rep.items.push_back({"pairing c(b(-1,0)* (x) b(1,0)*, 1~) = q^-6", ok, val.str()});
  }
  // (d) minor-polynomial identities
  struct Ident {
    std::string name;
    std::size_t lhs_xi, lhs_v;
    std::size_t xi1, xi2;  // functional pairs first factor with xi1, second with xi2
    std::size_t tilde;
    RatFunc scale;
  };
  std::vector<Ident> ids{
      {"c(b(1,0)*, b(0,0)) = -1/(q[2]) c(b(2,-1)* (x) b(-1,1)*, b(0,0)~)", i10, i00, im11, i2m1, i00,
       -(g2::Q(1) * g2::two()).inverse()},
      {"c(b(0,0)*, b(0,0)) = 1/[2] c(b(-1,0)* (x) b(1,0)*, b(0,0)~)", i00, i00, i10, im10, i00, g2::two().inverse()},
      {"c(b(0,0)*, b(1,0)) = 1/[2] c(b(-1,0)* (x) b(1,0)*, b(1,0)~)", i00, i10, i10, im10, i10, g2::two().inverse()},
  };
  int bound = 2 * M.span_height;
  rep.word_bound = bound;
  for (const auto& id : ids) {
    CoeffCombo lhs(MatrixCoeff{t.M, unit_vec(id.lhs_xi), unit_vec(id.lhs_v), ""});
    // direct form on M (x) M
    CoeffCombo direct;
    direct.add(id.scale, MatrixCoeff{t.MM, kron(unit_vec(id.xi1), unit_vec(id.xi2), nb), t.btilde[id.tilde], ""});
    bool ok1 = coeff_equal(lhs, direct);
    // expanded form in products of coefficients of M
    CoeffCombo expanded = g2_expand(t, id.xi1, id.xi2, t.btilde[id.tilde], id.scale, true);
    bool ok2 = coeff_equal(lhs, expanded);
    bool ok3 = coefficients_localized(expanded);
    bool ok4 = true;
    if (cross_check_words) ok4 = coeff_equal_words(lhs, expanded, M.span_height);
    std::string detail;
    if (!ok1) detail = "tensor form";
    else if (!ok2) detail = "expanded form";
    else if (!ok3) detail = "coefficient outside Z[v^+-1,(q^2+1)^-1]";
    else if (!ok4) detail = "word evaluation";
    rep.items.push_back({id.name, ok1 && ok2 && ok3 && ok4, detail});
  }
  return rep;
}

}  // namespace qcf
