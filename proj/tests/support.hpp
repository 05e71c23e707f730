// Helpers shared by the test suites: random seed generation and small
// independent reference implementations used as oracles.
#pragma once

#include <map>
#include <random>
#include <vector>

#include "qcf/bzseed.hpp"
#include "qcf/cluster.hpp"
#include "qcf/coeff.hpp"
#include "qcf/lie.hpp"
#include "qcf/seed.hpp"

namespace qcf::testing {

/// Principal-coefficient seed for a random skew-symmetrizable B (b_ij = s_ij d_j with
/// s skew-symmetric), scrambled by a few random mutations. |I| = 2n <= 8.
inline Seed random_compatible_seed(std::mt19937& rng, int max_uf = 4) {
  std::uniform_int_distribution<int> nd(1, max_uf), dd(1, 2), sd(-2, 2), ld(0, 5);
  const int n = nd(rng);
  std::vector<int> d(n);
  for (auto& x : d) x = dd(rng);
  IntMat S(n, IntVec(n, 0)), B(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      S[i][j] = sd(rng);
      S[j][i] = -S[i][j];
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[i][j] = S[i][j] * d[j];
  Seed s = principal_seed(B, d, true);
  std::uniform_int_distribution<int> kd(1, n);
  const int len = ld(rng);
  for (int t = 0; t < len; ++t) s = mutate_matrices(s, kd(rng));
  return s;
}

/// Laurent polynomial in v as exponent -> coefficient; the naive reference.
using NaiveLaurent = std::map<int, long long>;

inline NaiveLaurent naive(const Laurent& p) {
  NaiveLaurent out;
  for (const auto& [e, c] : p.terms()) out[e] = static_cast<long long>(c);
  return out;
}

inline NaiveLaurent naive_mul(const NaiveLaurent& a, const NaiveLaurent& b) {
  NaiveLaurent out;
  for (const auto& [e1, c1] : a)
    for (const auto& [e2, c2] : b) out[e1 + e2] += c1 * c2;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline NaiveLaurent naive_add(NaiveLaurent a, const NaiveLaurent& b, long long sign = 1) {
  for (const auto& [e, c] : b) a[e] += sign * c;
  for (auto it = a.begin(); it != a.end();) it = it->second == 0 ? a.erase(it) : std::next(it);
  return a;
}

/// [n]_q = sum_{k=0}^{n-1} q^{n-1-2k} with q = v^{2d}, summed term by term.
inline NaiveLaurent naive_qint(int n, int d = 1) {
  NaiveLaurent out;
  for (int k = 0; k < n; ++k) out[2 * d * (n - 1 - 2 * k)] += 1;
  return out;
}

/// q-binomial through the q-Pascal rule [n,k] = q^k [n-1,k] + q^{-(n-k)} [n-1,k-1].
inline NaiveLaurent naive_qbinom(int n, int k) {
  if (k < 0 || k > n) return {};
  if (k == 0 || k == n) return {{0, 1}};
  NaiveLaurent a = naive_qbinom(n - 1, k - 1), b = naive_qbinom(n - 1, k), out;
  for (const auto& [e, c] : b) out[e + 2 * k] += c;
  for (const auto& [e, c] : a) out[e - 2 * (n - k)] += c;
  return out;
}

inline Laurent random_laurent(std::mt19937& rng, int terms = 4, int span = 6, int cmax = 5) {
  std::uniform_int_distribution<int> ed(-span, span), cd(-cmax, cmax);
  Laurent p;
  for (int t = 0; t < terms; ++t) p += Laurent::monomial(cd(rng), ed(rng));
  return p;
}

/// Classical mutation of a cluster evaluated at rational values:
/// x_k' = (prod x_j^[b_jk]+ + prod x_j^[-b_jk]+) / x_k. Independent of the quantum torus code.
inline std::vector<BigRat> classical_mutate(const Seed& s, const std::vector<BigRat>& x, int k_id) {
  std::size_t k = s.upos(k_id);
  BigRat p(1), m(1);
  for (std::size_t j = 0; j < s.size(); ++j) {
    Int b = s.b(j, k);
    for (Int t = 0; t < b; ++t) p *= x[j];
    for (Int t = 0; t < -b; ++t) m *= x[j];
  }
  auto y = x;
  y[k] = (p + m) / x[k];
  return y;
}

/// Evaluates an element with integer coefficients at rational values of the initial variables.
inline BigRat evaluate_at(const TwistedLaurent<IntegerRing>& z, const std::vector<BigRat>& x) {
  BigRat s(0);
  for (const auto& [m, c] : z.terms()) {
    BigRat t(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int e = 0; e < m[i]; ++e) t *= x[i];
      for (int e = 0; e < -m[i]; ++e) t /= x[i];
    }
    s += t;
  }
  return s;
}

inline Seed type_seed(const std::string& type, bool quantum = true) {
  RootData rd = make_root_data(type);
  return principal_seed(exchange_from_cartan(rd.cartan), rd.d, quantum);
}

}  // namespace qcf::testing
