/**
 * @file qtorus.hpp
 * @brief Quantum tori: Lambda-twisted Laurent polynomials over a coefficient ring,
 * the dominance order attached to an exchange matrix, degrees and valuations.
 *
 * Monomials multiply as x^m * x^m' = v^{Lambda(m,m')} x^{m+m'} with v = q^1/2.
 */
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcf/coeff.hpp"

namespace qcf {

using Int = long long;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;
using Exp = std::vector<int>;

inline Int bilinear(const IntMat& L, const Exp& a, const Exp& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Int row = 0;
    for (std::size_t j = 0; j < b.size(); ++j) row += L[i][j] * b[j];
    s += a[i] * row;
  }
  return s;
}

inline Exp exp_add(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Exp exp_sub(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Exp exp_neg(const Exp& a) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
inline Exp unit_exp(std::size_t n, std::size_t i) {
  Exp e(n, 0);
  e[i] = 1;
  return e;
}

/// Shared context of a quantum torus: coefficient ring and the form Lambda.
template <class R>
struct Torus {
  R ring;
  IntMat lambda;

  std::size_t dim() const { return lambda.size(); }
  Int form(const Exp& a, const Exp& b) const { return bilinear(lambda, a, b); }
};

template <class R>
std::shared_ptr<const Torus<R>> make_torus(R ring, IntMat lambda) {
  return std::make_shared<const Torus<R>>(Torus<R>{std::move(ring), std::move(lambda)});
}

/// Element of a quantum torus: finite sum of c_m x^m.
template <class R>
class TwistedLaurent {
 public:
  using elem = typename R::elem;
  using TorusPtr = std::shared_ptr<const Torus<R>>;
  using TermMap = std::map<Exp, elem>;

  TwistedLaurent() = default;
  explicit TwistedLaurent(TorusPtr t) : tor_(std::move(t)) {}

  static TwistedLaurent monomial(TorusPtr t, Exp m, elem c) {
    TwistedLaurent r(std::move(t));
    if (m.size() != r.tor_->dim()) throw Error(Errc::IncompatibleTorus, "exponent length mismatch");
    if (!R::is_zero(c)) r.t_.emplace(std::move(m), std::move(c));
    return r;
  }
  static TwistedLaurent monomial(TorusPtr t, Exp m) {
    elem one = t->ring.one();
    return monomial(std::move(t), std::move(m), std::move(one));
  }
  static TwistedLaurent one(TorusPtr t) {
    Exp z(t->dim(), 0);
    return monomial(std::move(t), std::move(z));
  }
  static TwistedLaurent constant(TorusPtr t, elem c) {
    Exp z(t->dim(), 0);
    return monomial(std::move(t), std::move(z), std::move(c));
  }
  static TwistedLaurent var(TorusPtr t, std::size_t i) {
    Exp e = unit_exp(t->dim(), i);
    return monomial(std::move(t), std::move(e));
  }

  const TorusPtr& torus() const { return tor_; }
  const R& ring() const { return tor_->ring; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  elem coeff(const Exp& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? tor_->ring.zero() : it->second;
  }
  /// Adds c x^m in place.
  void add_term(const Exp& m, const elem& c) {
    if (R::is_zero(c)) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
      return;
    }
    it->second += c;
    if (R::is_zero(it->second)) t_.erase(it);
  }

  TwistedLaurent operator-() const {
    TwistedLaurent r(tor_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }
  friend TwistedLaurent operator+(const TwistedLaurent& a, const TwistedLaurent& b) {
    check_same(a, b);
    TwistedLaurent r = a;
    if (!r.tor_) r.tor_ = b.tor_;
    for (const auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
  }
  friend TwistedLaurent operator-(const TwistedLaurent& a, const TwistedLaurent& b) { return a + (-b); }
  friend TwistedLaurent operator*(const TwistedLaurent& a, const TwistedLaurent& b) {
    check_same(a, b);
    TwistedLaurent r(a.tor_ ? a.tor_ : b.tor_);
    if (a.t_.empty() || b.t_.empty()) return r;
    const auto& L = r.tor_->lambda;
    const std::size_t n = r.tor_->dim();
    // Precompute Lambda * m' for the right factor.
    std::vector<IntVec> lb;
    lb.reserve(b.t_.size());
    for (const auto& [mb, cb] : b.t_) {
      IntVec v(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v[i] += L[i][j] * mb[j];
      lb.push_back(std::move(v));
    }
    for (const auto& [ma, ca] : a.t_) {
      std::size_t k = 0;
      for (const auto& [mb, cb] : b.t_) {
        Int tw = 0;
        for (std::size_t i = 0; i < n; ++i) tw += ma[i] * lb[k][i];
        ++k;
        r.add_term(exp_add(ma, mb), r.tor_->ring.mul_vpow(ca * cb, static_cast<int>(tw)));
      }
    }
    return r;
  }
  TwistedLaurent& operator+=(const TwistedLaurent& b) { return *this = *this + b; }
  TwistedLaurent& operator-=(const TwistedLaurent& b) { return *this = *this - b; }
  TwistedLaurent& operator*=(const TwistedLaurent& b) { return *this = *this * b; }

  /// Multiplication by a central scalar.
  TwistedLaurent scaled(const elem& c) const {
    TwistedLaurent r(tor_);
    if (R::is_zero(c)) return r;
    for (const auto& [m, x] : t_) r.add_term(m, x * c);
    return r;
  }
  /// Multiplication by v^k.
  TwistedLaurent vshift(int k) const {
    TwistedLaurent r(tor_);
    for (const auto& [m, x] : t_) r.t_.emplace(m, tor_->ring.mul_vpow(x, k));
    return r;
  }

  friend bool operator==(const TwistedLaurent& a, const TwistedLaurent& b) {
    if (a.t_.empty() || b.t_.empty()) return a.t_.empty() && b.t_.empty();
    check_same(a, b);
    return a.t_ == b.t_;
  }
  friend bool operator!=(const TwistedLaurent& a, const TwistedLaurent& b) { return !(a == b); }

  TwistedLaurent pow(unsigned k) const {
    TwistedLaurent r = one(tor_);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// x^{-m} * a; satisfies x^m * result = a.
  TwistedLaurent divide_monomial(const Exp& m) const {
    TwistedLaurent r(tor_);
    Exp nm = exp_neg(m);
    for (const auto& [e, c] : t_) r.t_.emplace(exp_add(e, nm), tor_->ring.mul_vpow(c, static_cast<int>(tor_->form(nm, e))));
    return r;
  }

  /// Exact q with d * q = *this (left division), or nullopt.
  std::optional<TwistedLaurent> left_divide(const TwistedLaurent& d) const { return divide_impl(d, true); }
  /// Exact q with q * d = *this (right division), or nullopt.
  std::optional<TwistedLaurent> right_divide(const TwistedLaurent& d) const { return divide_impl(d, false); }

  /// Coefficient-wise image in another ring (e.g. a specialization); the target
  /// torus must use the same Lambda.
  template <class R2, class F>
  TwistedLaurent<R2> map_coeffs(std::shared_ptr<const Torus<R2>> target, F&& f) const {
    TwistedLaurent<R2> r(target);
    for (const auto& [m, c] : t_) r.add_term(m, f(c));
    return r;
  }

  /// Minimum and maximum of each coordinate over the support.
  std::pair<Exp, Exp> bounds() const {
    const std::size_t n = tor_->dim();
    Exp lo(n, 0), hi(n, 0);
    bool first = true;
    for (const auto& [m, c] : t_) {
      for (std::size_t i = 0; i < n; ++i) {
        if (first || m[i] < lo[i]) lo[i] = m[i];
        if (first || m[i] > hi[i]) hi[i] = m[i];
      }
      first = false;
    }
    return {lo, hi};
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += "(" + tor_->ring.format(it->second) + ")*x^(";
      for (std::size_t i = 0; i < it->first.size(); ++i) s += (i ? "," : "") + std::to_string(it->first[i]);
      s += ")";
    }
    return s;
  }

 private:
  static void check_same(const TwistedLaurent& a, const TwistedLaurent& b) {
    if (!a.tor_ || !b.tor_ || a.tor_ == b.tor_) return;
    if (a.tor_->lambda != b.tor_->lambda) throw Error(Errc::IncompatibleTorus, "different index sets or Lambda");
  }

  std::optional<TwistedLaurent> divide_impl(const TwistedLaurent& d, bool left) const {
    check_same(*this, d);
    if (d.is_zero()) throw Error(Errc::Internal, "division by zero in the quantum torus");
    TwistedLaurent q(tor_ ? tor_ : d.tor_);
    if (is_zero()) return q;
    const auto& ring = q.tor_->ring;
    const std::size_t n = q.tor_->dim();
    auto [alo, ahi] = bounds();
    auto [dlo, dhi] = d.bounds();
    Exp qlo(n), qhi(n);
    for (std::size_t i = 0; i < n; ++i) {
      qlo[i] = alo[i] - dlo[i];
      qhi[i] = ahi[i] - dhi[i];
      if (qlo[i] > qhi[i]) return std::nullopt;
    }
    const auto& [md, cd] = *d.t_.rbegin();
    TwistedLaurent rem = *this;
    while (!rem.is_zero()) {
      const auto& [mr, cr] = *rem.t_.rbegin();
      Exp m = exp_sub(mr, md);
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] < qlo[i] || m[i] > qhi[i]) return std::nullopt;
      Int tw = left ? q.tor_->form(md, m) : q.tor_->form(m, md);
      auto c = ring.divide(cr, ring.mul_vpow(cd, static_cast<int>(tw)));
      if (!c) return std::nullopt;
      TwistedLaurent t = monomial(q.tor_, m, *c);
      q.add_term(m, *c);
      rem = left ? rem - d * t : rem - t * d;
    }
    return q;
  }

  TorusPtr tor_;
  TermMap t_;
};

// ---------------------------------------------------------------------------
// Dominance order m' <= m  iff  m' = m + Btilde n with n in N^{I_uf}.

/// Solver for m' - m = Btilde n using a rational left inverse of Btilde.
class Dominance {
 public:
  explicit Dominance(IntMat btilde) : B_(std::move(btilde)) {
    rows_ = B_.size();
    cols_ = rows_ ? B_[0].size() : 0;
    // L = (B^T B)^{-1} B^T
    std::vector<std::vector<BigRat>> G(cols_, std::vector<BigRat>(cols_ * 2, BigRat(0)));
    for (std::size_t a = 0; a < cols_; ++a) {
      for (std::size_t b = 0; b < cols_; ++b) {
        Int s = 0;
        for (std::size_t i = 0; i < rows_; ++i) s += B_[i][a] * B_[i][b];
        G[a][b] = s;
      }
      G[a][cols_ + a] = 1;
    }
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < cols_ && G[p][c] == 0) ++p;
      if (p == cols_) throw Error(Errc::RankError, "exchange matrix is not of full rank");
      std::swap(G[p], G[c]);
      BigRat inv = 1 / G[c][c];
      for (auto& x : G[c]) x *= inv;
      for (std::size_t r = 0; r < cols_; ++r) {
        if (r == c || G[r][c] == 0) continue;
        BigRat f = G[r][c];
        for (std::size_t k = 0; k < 2 * cols_; ++k) G[r][k] -= f * G[c][k];
      }
    }
    L_.assign(cols_, std::vector<BigRat>(rows_, BigRat(0)));
    for (std::size_t a = 0; a < cols_; ++a)
      for (std::size_t i = 0; i < rows_; ++i) {
        BigRat s = 0;
        for (std::size_t b = 0; b < cols_; ++b) s += G[a][cols_ + b] * B_[i][b];
        L_[a][i] = s;
      }
  }

  const IntMat& btilde() const { return B_; }

  /// Integer n with diff = Btilde n, if one exists.
  std::optional<IntVec> solve(const Exp& diff) const {
    IntVec n(cols_, 0);
    for (std::size_t a = 0; a < cols_; ++a) {
      BigRat s = 0;
      for (std::size_t i = 0; i < rows_; ++i)
        if (diff[i] != 0) s += L_[a][i] * diff[i];
      if (boost::multiprecision::denominator(s) != 1) return std::nullopt;
      n[a] = static_cast<Int>(boost::multiprecision::numerator(s));
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      Int s = 0;
      for (std::size_t a = 0; a < cols_; ++a) s += B_[i][a] * n[a];
      if (s != diff[i]) return std::nullopt;
    }
    return n;
  }

  /// yes(n) when mp = m + Btilde n with n >= 0, else nullopt.
  std::optional<IntVec> leq(const Exp& mp, const Exp& m) const {
    auto n = solve(exp_sub(mp, m));
    if (!n) return std::nullopt;
    for (Int x : *n)
      if (x < 0) return std::nullopt;
    return n;
  }

  /// Image Btilde n as an exponent vector.
  Exp apply(const IntVec& n) const {
    Exp r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      Int s = 0;
      for (std::size_t a = 0; a < cols_; ++a) s += B_[i][a] * n[a];
      r[i] = static_cast<int>(s);
    }
    return r;
  }

 private:
  IntMat B_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<BigRat>> L_;
};

template <class R>
struct Degree {
  Exp g;
  typename R::elem leading;
};

/// The unique dominance-maximal exponent of z and its coefficient, or nullopt
/// (NoDegree) when no exponent dominates all others. Throws ZeroInput for z = 0.
template <class R>
std::optional<Degree<R>> degree_of(const TwistedLaurent<R>& z, const Dominance& dom) {
  if (z.is_zero()) throw Error(Errc::ZeroInput, "degree of zero");
  for (auto it = z.terms().rbegin(); it != z.terms().rend(); ++it) {
    bool ok = true;
    for (const auto& [m, c] : z.terms()) {
      if (&m == &it->first) continue;
      if (!dom.leq(m, it->first)) {
        ok = false;
        break;
      }
    }
    if (ok) return Degree<R>{it->first, it->second};
  }
  return std::nullopt;
}

/// Order of vanishing along x_j: the minimum j-exponent; nullopt means +infinity.
template <class R>
std::optional<int> vanishing_order(const TwistedLaurent<R>& z, std::size_t j) {
  if (z.is_zero()) return std::nullopt;
  int best = 0;
  bool first = true;
  for (const auto& [m, c] : z.terms()) {
    if (first || m[j] < best) best = m[j];
    first = false;
  }
  return best;
}

}  // namespace qcf
