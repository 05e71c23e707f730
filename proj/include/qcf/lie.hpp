/**
 * @file lie.hpp
 * @brief Cartan data, root systems by closure, weights in fundamental-weight
 * coordinates, Weyl words.
 *
 * Labeling (differs from Bourbaki for B, E, F):
 *   A_r  1-2-...-r
 *   B_r  1<=2-3-...-r        alpha_1 short
 *   C_r  1-...-(r-1)<=r      alpha_r long
 *   D_r  1-...-(r-2) with (r-1) and r both attached to r-2
 *   E_r  chain 1-...-(r-1), node r attached to r-3
 *   F_4  1-2<=3-4            alpha_1, alpha_2 short
 *   G_2  1<=2 (triple)       alpha_1 short
 */
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcf/qtorus.hpp"

namespace qcf {

using WeylWord = std::vector<int>;  // 1-based letters; s_{i1} s_{i2} ... s_{ik}

struct RootStringLen {
  int p = 0;  // max k with alpha + k alpha_i a root
  int q = 0;  // max k with alpha - k alpha_i a root
};

class RootData {
 public:
  char type = 'A';
  int rank = 0;
  IntMat cartan;          // c_ij = <alpha_i^vee, alpha_j>
  std::vector<int> d;     // (alpha_i, alpha_i) / 2
  std::vector<IntVec> positive_roots;  // simple-root coordinates, by height

  std::string name() const { return std::string(1, type) + std::to_string(rank); }
  std::size_t r() const { return static_cast<std::size_t>(rank); }

  /// <alpha_i^vee, beta> for beta in simple-root coordinates.
  Int coroot_pairing(int i, const IntVec& beta) const {
    Int s = 0;
    for (std::size_t j = 0; j < r(); ++j) s += cartan[i - 1][j] * beta[j];
    return s;
  }
  /// Simple-root coordinates -> fundamental-weight coordinates.
  IntVec root_to_weight(const IntVec& beta) const {
    IntVec w(r(), 0);
    for (std::size_t i = 0; i < r(); ++i)
      for (std::size_t j = 0; j < r(); ++j) w[i] += cartan[i][j] * beta[j];
    return w;
  }
  IntVec simple_root_weight(int i) const {
    IntVec w(r());
    for (std::size_t k = 0; k < r(); ++k) w[k] = cartan[k][i - 1];
    return w;
  }
  /// Fundamental-weight coordinates -> rational simple-root coordinates.
  std::vector<BigRat> weight_to_root_rational(const IntVec& mu) const {
    std::vector<BigRat> out(r(), BigRat(0));
    for (std::size_t i = 0; i < r(); ++i)
      for (std::size_t j = 0; j < r(); ++j) out[i] += cinv_[i][j] * mu[j];
    return out;
  }
  std::optional<IntVec> weight_to_root(const IntVec& mu) const {
    auto q = weight_to_root_rational(mu);
    IntVec out(r());
    for (std::size_t i = 0; i < r(); ++i) {
      if (boost::multiprecision::denominator(q[i]) != 1) return std::nullopt;
      out[i] = static_cast<Int>(boost::multiprecision::numerator(q[i]));
    }
    return out;
  }
  /// The invariant form (mu, nu) on weights, normalized by (alpha, alpha) = 2 for short roots.
  BigRat form(const IntVec& mu, const IntVec& nu) const {
    auto rn = weight_to_root_rational(nu);
    BigRat s = 0;
    for (std::size_t k = 0; k < r(); ++k) s += rn[k] * d[k] * mu[k];
    return s;
  }
  /// (alpha_i, alpha_j) = d_i c_ij.
  Int root_form(int i, int j) const { return d[i - 1] * cartan[i - 1][j - 1]; }
  /// (mu, alpha_i) = d_i mu_i for mu in fundamental-weight coordinates.
  Int form_with_simple(const IntVec& mu, int i) const { return d[i - 1] * mu[i - 1]; }

  IntVec reflect_weight(int i, const IntVec& mu) const {
    IntVec out = mu;
    Int c = mu[i - 1];
    for (std::size_t k = 0; k < r(); ++k) out[k] -= c * cartan[k][i - 1];
    return out;
  }
  IntVec reflect_root(int i, const IntVec& beta) const {
    IntVec out = beta;
    out[i - 1] -= coroot_pairing(i, beta);
    return out;
  }

  IntVec fundamental_weight(int i) const {
    IntVec w(r(), 0);
    w[i - 1] = 1;
    return w;
  }
  IntVec rho() const { return IntVec(r(), 1); }
  IntVec zero() const { return IntVec(r(), 0); }
  const IntVec& highest_root() const { return positive_roots.back(); }
  std::size_t num_positive_roots() const { return positive_roots.size(); }

  /// All roots: positive ones followed by their negatives.
  std::vector<IntVec> all_roots() const {
    std::vector<IntVec> out = positive_roots;
    for (const auto& b : positive_roots) {
      IntVec n = b;
      for (auto& x : n) x = -x;
      out.push_back(n);
    }
    return out;
  }
  bool is_root(const IntVec& beta) const {
    IntVec b = beta;
    bool neg = std::any_of(b.begin(), b.end(), [](Int x) { return x < 0; });
    if (neg)
      for (auto& x : b) x = -x;
    return root_set_.count(b) > 0;
  }
  static bool is_positive(const IntVec& beta) {
    bool nonneg = std::all_of(beta.begin(), beta.end(), [](Int x) { return x >= 0; });
    bool nonzero = std::any_of(beta.begin(), beta.end(), [](Int x) { return x != 0; });
    return nonneg && nonzero;
  }
  static Int height(const IntVec& beta) {
    Int h = 0;
    for (Int x : beta) h += x;
    return h;
  }

  RootStringLen root_string(int i, const IntVec& alpha) const {
    if (!is_root(alpha)) throw Error(Errc::NotARoot, "not a root");
    RootStringLen s;
    IntVec b = alpha;
    while (true) {
      b[i - 1] += 1;
      if (!is_root(b)) break;
      ++s.p;
    }
    b = alpha;
    while (true) {
      b[i - 1] -= 1;
      if (!is_root(b)) break;
      ++s.q;
    }
    return s;
  }

  // ---- Weyl group --------------------------------------------------------
  IntVec apply_weight(const WeylWord& w, IntVec mu) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) mu = reflect_weight(*it, mu);
    return mu;
  }
  IntVec apply_root(const WeylWord& w, IntVec beta) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) beta = reflect_root(*it, beta);
    return beta;
  }
  /// Length of the element represented by the word (number of inversions).
  std::size_t length(const WeylWord& w) const {
    WeylWord inv(w.rbegin(), w.rend());
    std::size_t n = 0;
    for (const auto& b : positive_roots)
      if (!is_positive(apply_root(inv, b))) ++n;
    return n;
  }
  bool is_reduced(const WeylWord& w) const {
    for (int i : w)
      if (i < 1 || i > rank) return false;
    WeylWord prefix;
    for (int i : w) {
      IntVec a(r(), 0);
      a[i - 1] = 1;
      if (!is_positive(apply_root(prefix, a))) return false;
      prefix.push_back(i);
    }
    return true;
  }
  bool same_element(const WeylWord& a, const WeylWord& b) const { return apply_weight(a, rho()) == apply_weight(b, rho()); }
  /// Lexicographically smallest reduced word of w0.
  WeylWord longest_word() const {
    WeylWord w;
    while (true) {
      bool extended = false;
      for (int i = 1; i <= rank; ++i) {
        WeylWord t = w;
        t.push_back(i);
        if (is_reduced(t)) {
          w = t;
          extended = true;
          break;
        }
      }
      if (!extended) break;
    }
    return w;
  }
  /// A reduced word (lex-smallest) for some u with u(lambda) = mu, lambda dominant.
  std::optional<WeylWord> word_to_weight(const IntVec& lambda, const IntVec& mu) const {
    // BFS over the orbit by simple reflections, raising length.
    std::map<IntVec, WeylWord> seen{{lambda, {}}};
    std::vector<IntVec> frontier{lambda};
    while (!frontier.empty()) {
      std::vector<IntVec> next;
      for (const auto& x : frontier) {
        if (x == mu) return seen[x];
        for (int i = 1; i <= rank; ++i) {
          if (x[i - 1] <= 0) continue;
          IntVec y = reflect_weight(i, x);
          if (seen.count(y)) continue;
          WeylWord w = seen[x];
          w.insert(w.begin(), i);
          seen[y] = w;
          next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
    return std::nullopt;
  }
  /// The Weyl orbit of a weight.
  std::vector<IntVec> orbit(const IntVec& lambda) const {
    std::set<IntVec> seen{lambda};
    std::vector<IntVec> out{lambda};
    for (std::size_t t = 0; t < out.size(); ++t)
      for (int i = 1; i <= rank; ++i) {
        IntVec y = reflect_weight(i, out[t]);
        if (seen.insert(y).second) out.push_back(y);
      }
    return out;
  }

  /// Dominance comparison on P: mu <= lambda iff lambda - mu in Q+; returns the height if comparable.
  std::optional<Int> height_if_leq(const IntVec& mu, const IntVec& lambda) const {
    IntVec diff(r());
    for (std::size_t i = 0; i < r(); ++i) diff[i] = lambda[i] - mu[i];
    auto b = weight_to_root(diff);
    if (!b) return std::nullopt;
    for (Int x : *b)
      if (x < 0) return std::nullopt;
    return height(*b);
  }

  /// Hard-coded highest root in this labeling, used as a cross-check of the closure.
  IntVec expected_highest_root() const {
    const int n = rank;
    IntVec t(r(), 1);
    switch (type) {
      case 'A': break;
      case 'B':
        for (int i = 0; i < n - 1; ++i) t[i] = 2;
        break;
      case 'C':
        for (int i = 0; i < n - 1; ++i) t[i] = 2;
        break;
      case 'D':
        for (int i = 1; i < n - 2; ++i) t[i] = 2;
        break;
      case 'E':
        if (n == 6) t = {1, 2, 3, 2, 1, 2};
        if (n == 7) t = {1, 2, 3, 4, 3, 2, 2};
        if (n == 8) t = {2, 3, 4, 5, 6, 4, 2, 3};
        break;
      case 'F': t = {2, 4, 3, 2}; break;
      case 'G': t = {3, 2}; break;
      default: break;
    }
    return t;
  }

  void build() {
    // C^{-1}
    const std::size_t n = r();
    std::vector<std::vector<BigRat>> M(n, std::vector<BigRat>(2 * n, BigRat(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) M[i][j] = cartan[i][j];
      M[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (M[p][c] == 0) ++p;
      std::swap(M[p], M[c]);
      BigRat inv = 1 / M[c][c];
      for (auto& x : M[c]) x *= inv;
      for (std::size_t rr = 0; rr < n; ++rr) {
        if (rr == c || M[rr][c] == 0) continue;
        BigRat f = M[rr][c];
        for (std::size_t k = 0; k < 2 * n; ++k) M[rr][k] -= f * M[c][k];
      }
    }
    cinv_.assign(n, std::vector<BigRat>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cinv_[i][j] = M[i][n + j];
    // roots by closure along root strings
    positive_roots.clear();
    root_set_.clear();
    for (std::size_t i = 0; i < n; ++i) {
      IntVec a(n, 0);
      a[i] = 1;
      positive_roots.push_back(a);
      root_set_.insert(a);
    }
    for (std::size_t t = 0; t < positive_roots.size(); ++t) {
      IntVec beta = positive_roots[t];
      for (int i = 1; i <= rank; ++i) {
        int q = 0;
        IntVec b = beta;
        while (true) {
          b[i - 1] -= 1;
          if (!root_set_.count(b)) break;
          ++q;
        }
        Int p = q - coroot_pairing(i, beta);
        if (p > 0) {
          IntVec up = beta;
          up[i - 1] += 1;
          if (root_set_.insert(up).second) positive_roots.push_back(up);
        }
      }
    }
    std::stable_sort(positive_roots.begin(), positive_roots.end(), [](const IntVec& a, const IntVec& b) {
      if (height(a) != height(b)) return height(a) < height(b);
      return a < b;
    });
  }

 private:
  std::vector<std::vector<BigRat>> cinv_;
  std::set<IntVec> root_set_;
};

/// Builds root data from a type name such as "A2", "B3", "G2", "E8".
inline std::string weight_str(const IntVec& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

inline RootData make_root_data(const std::string& name) {
  if (name.size() < 2) throw Error(Errc::Parse, "bad Cartan type '" + name + "'");
  char t = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  int n = 0;
  try {
    n = std::stoi(name.substr(1));
  } catch (...) {
    throw Error(Errc::Parse, "bad Cartan type '" + name + "'");
  }
  bool ok = (t == 'A' && n >= 1) || (t == 'B' && n >= 2) || (t == 'C' && n >= 2) || (t == 'D' && n >= 4) ||
            (t == 'E' && n >= 6 && n <= 8) || (t == 'F' && n == 4) || (t == 'G' && n == 2);
  if (!ok) throw Error(Errc::Parse, "unsupported Cartan type '" + name + "'");
  const std::size_t r = static_cast<std::size_t>(n);
  // Gram matrix G_ij = (alpha_i, alpha_j)
  IntMat G(r, IntVec(r, 0));
  std::vector<Int> len(r, 2);
  auto bond = [&](int i, int j, Int v) {
    G[i - 1][j - 1] = v;
    G[j - 1][i - 1] = v;
  };
  switch (t) {
    case 'A':
      for (int i = 1; i < n; ++i) bond(i, i + 1, -1);
      break;
    case 'B':
      for (int i = 2; i <= n; ++i) len[i - 1] = 4;
      for (int i = 1; i < n; ++i) bond(i, i + 1, -2);
      break;
    case 'C':
      len[r - 1] = 4;
      for (int i = 1; i < n - 1; ++i) bond(i, i + 1, -1);
      bond(n - 1, n, -2);
      break;
    case 'D':
      for (int i = 1; i <= n - 2; ++i) bond(i, i + 1, -1);
      bond(n - 2, n, -1);
      break;
    case 'E':
      for (int i = 1; i <= n - 2; ++i) bond(i, i + 1, -1);
      bond(n - 3, n, -1);
      break;
    case 'F':
      len[2] = len[3] = 4;
      bond(1, 2, -1);
      bond(2, 3, -2);
      bond(3, 4, -2);
      break;
    case 'G':
      len[1] = 6;
      bond(1, 2, -3);
      break;
    default: break;
  }
  RootData rd;
  rd.type = t;
  rd.rank = n;
  rd.cartan.assign(r, IntVec(r, 0));
  rd.d.assign(r, 1);
  for (std::size_t i = 0; i < r; ++i) {
    G[i][i] = len[i];
    rd.d[i] = static_cast<int>(len[i] / 2);
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rd.cartan[i][j] = 2 * G[i][j] / G[i][i];
  rd.build();
  if (rd.highest_root() != rd.expected_highest_root())
    throw Error(Errc::Internal, "root closure disagrees with the tabulated highest root for " + name);
  return rd;
}

}  // namespace qcf
