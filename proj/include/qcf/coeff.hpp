/**
 * @file coeff.hpp
 * @brief Exact coefficient rings: Z[v^+-1] (v = q^1/2), its localizations,
 * its fraction field, and specialization targets (Z, Z[1/2], Z/n).
 *
 * Every ring is described by a small "ring object" (LaurentRing, IntegerRing, ...)
 * exposing zero/one, the image of v, exact division and text I/O. Element types
 * carry their own arithmetic operators.
 */
#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcf/error.hpp"

namespace qcf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt g = boost::multiprecision::gcd(a, b);
  return g < 0 ? BigInt(-g) : g;
}

namespace detail {

// Dense polynomial in v, index = degree.
using Dense = std::vector<BigInt>;

inline void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline BigInt content(const Dense& p) {
  BigInt g = 0;
  for (const auto& c : p) {
    g = big_gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

inline void divide_content(Dense& p, const BigInt& c) {
  if (c == 1 || c == 0) return;
  for (auto& x : p) x /= c;
}

// Exact quotient a / b in Z[v]; nullopt when b does not divide a.
inline std::optional<Dense> div_exact(Dense a, const Dense& b) {
  trim(a);
  if (b.empty()) throw Error(Errc::Internal, "division by zero polynomial");
  if (a.empty()) return Dense{};
  if (a.size() < b.size()) return std::nullopt;
  const BigInt& lb = b.back();
  Dense q(a.size() - b.size() + 1);
  const long long db = static_cast<long long>(b.size()) - 1;
  for (long long i = static_cast<long long>(a.size()) - 1; i >= db; --i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    BigInt r;
    BigInt c;
    boost::multiprecision::divide_qr(a[static_cast<std::size_t>(i)], lb, c, r);
    if (r != 0) return std::nullopt;
    std::size_t sh = static_cast<std::size_t>(i - db);
    q[sh] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[sh + j] -= c * b[j];
  }
  for (const auto& x : a)
    if (x != 0) return std::nullopt;
  trim(q);
  return q;
}

// Pseudo-remainder of a by b (up to a nonzero constant factor).
inline Dense prem(Dense a, const Dense& b) {
  trim(a);
  const BigInt& lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    BigInt la = a.back();
    std::size_t sh = a.size() - b.size();
    BigInt g = big_gcd(la, lb);
    BigInt fa = lb / g, fb = la / g;
    for (auto& x : a) x *= fa;
    for (std::size_t j = 0; j < b.size(); ++j) a[sh + j] -= fb * b[j];
    trim(a);
  }
  return a;
}

// Gcd in Z[v] including integer content, with positive leading coefficient.
inline Dense poly_gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  if (a.empty() && b.empty()) return Dense{};
  if (a.empty()) std::swap(a, b);
  if (b.empty()) {
    if (a.back() < 0)
      for (auto& x : a) x = -x;
    return a;
  }
  BigInt ca = content(a), cb = content(b);
  BigInt g = big_gcd(ca, cb);
  divide_content(a, ca);
  divide_content(b, cb);
  if (a.size() < b.size()) std::swap(a, b);
  while (true) {
    if (b.size() == 1) {
      a = Dense{BigInt(1)};
      break;
    }
    Dense r = prem(a, b);
    if (r.empty()) {
      a = b;
      break;
    }
    divide_content(r, content(r));
    a = std::move(b);
    b = std::move(r);
  }
  if (a.back() < 0)
    for (auto& x : a) x = -x;
  for (auto& x : a) x *= g;
  return a;
}

}  // namespace detail

/// Laurent polynomial in v with arbitrary-precision integer coefficients.
class Laurent {
 public:
  using Term = std::pair<int, BigInt>;

  Laurent() = default;
  Laurent(long long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) t_.emplace_back(0, BigInt(c));
  }
  Laurent(const BigInt& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) t_.emplace_back(0, c);
  }
  static Laurent monomial(const BigInt& c, int k) {
    Laurent r;
    if (c != 0) r.t_.emplace_back(k, c);
    return r;
  }
  static Laurent vpow(int k) { return monomial(1, k); }
  static Laurent from_terms(std::vector<Term> t) {
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    Laurent r;
    for (auto& [e, c] : t) {
      if (!r.t_.empty() && r.t_.back().first == e)
        r.t_.back().second += c;
      else
        r.t_.emplace_back(e, std::move(c));
      if (r.t_.back().second == 0) r.t_.pop_back();
    }
    return r;
  }
  static Laurent from_dense(const detail::Dense& p, int shift) {
    Laurent r;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] != 0) r.t_.emplace_back(static_cast<int>(i) + shift, p[i]);
    return r;
  }

  bool is_zero() const { return t_.empty(); }
  const std::vector<Term>& terms() const { return t_; }
  int min_exp() const { return t_.front().first; }
  int max_exp() const { return t_.back().first; }
  const BigInt& lead() const { return t_.back().second; }
  BigInt coeff(int k) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), k,
                               [](const Term& a, int e) { return a.first < e; });
    return (it != t_.end() && it->first == k) ? it->second : BigInt(0);
  }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 0); }
  bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == 1; }
  /// True for +-v^k, the units of Z[v^+-1].
  bool is_unit() const { return t_.size() == 1 && (t_[0].second == 1 || t_[0].second == -1); }

  /// Coefficients as a dense polynomial after multiplying by v^{-min_exp}.
  detail::Dense dense() const {
    detail::Dense p;
    if (t_.empty()) return p;
    p.assign(static_cast<std::size_t>(max_exp() - min_exp() + 1), BigInt(0));
    for (const auto& [e, c] : t_) p[static_cast<std::size_t>(e - min_exp())] = c;
    return p;
  }

  Laurent shifted(int k) const {
    Laurent r = *this;
    for (auto& term : r.t_) term.first += k;
    return r;
  }
  /// The bar involution v -> v^{-1}.
  Laurent bar() const {
    Laurent r;
    r.t_.reserve(t_.size());
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) r.t_.emplace_back(-it->first, it->second);
    return r;
  }
  BigInt content() const {
    BigInt g = 0;
    for (const auto& term : t_) g = big_gcd(g, term.second);
    return g;
  }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& term : r.t_) term.second = -term.second;
    return r;
  }
  friend Laurent operator+(const Laurent& a, const Laurent& b) { return merge(a, b, false); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return merge(a, b, true); }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.t_.empty() || b.t_.empty()) return {};
    if (a.t_.size() == 1) return b.scaled(a.t_[0].second, a.t_[0].first);
    if (b.t_.size() == 1) return a.scaled(b.t_[0].second, b.t_[0].first);
    int lo = a.min_exp() + b.min_exp();
    int hi = a.max_exp() + b.max_exp();
    std::vector<BigInt> acc(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) acc[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
    Laurent r;
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (acc[i] != 0) r.t_.emplace_back(static_cast<int>(i) + lo, std::move(acc[i]));
    return r;
  }
  Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
  Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
  Laurent& operator*=(const Laurent& b) { return *this = *this * b; }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
  /// Total order (by exponent, then coefficient) for use as map keys.
  friend bool operator<(const Laurent& a, const Laurent& b) { return a.t_ < b.t_; }

  Laurent scaled(const BigInt& c, int shift) const {
    Laurent r;
    if (c == 0) return r;
    r.t_.reserve(t_.size());
    for (const auto& [e, x] : t_) r.t_.emplace_back(e + shift, x * c);
    return r;
  }

  Laurent pow(unsigned n) const {
    Laurent r(1), base = *this;
    while (n) {
      if (n & 1u) r *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return r;
  }

  /// Exact quotient a / b in Z[v^+-1], or nullopt.
  static std::optional<Laurent> exact_div(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) throw Error(Errc::Internal, "division by zero");
    if (a.is_zero()) return Laurent{};
    if (b.t_.size() == 1) {
      Laurent r;
      const BigInt& c = b.t_[0].second;
      for (const auto& [e, x] : a.t_) {
        BigInt q, rem;
        boost::multiprecision::divide_qr(x, c, q, rem);
        if (rem != 0) return std::nullopt;
        r.t_.emplace_back(e - b.t_[0].first, q);
      }
      return r;
    }
    auto q = detail::div_exact(a.dense(), b.dense());
    if (!q) return std::nullopt;
    return from_dense(*q, a.min_exp() - b.min_exp());
  }

  /// Text form: terms `c*v^k` in descending exponent order joined by ` + ` / ` - `.
  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      BigInt c = it->second;
      if (it == t_.rbegin()) {
        if (c < 0) {
          s += "-";
          c = -c;
        }
      } else {
        s += c < 0 ? " - " : " + ";
        if (c < 0) c = -c;
      }
      s += c.str() + "*v^" + std::to_string(it->first);
    }
    return s;
  }

  /// Parses the text form; also accepts bare integers, `v`, `v^k`, `c*v`.
  static Laurent parse(std::string_view in) {
    std::string s;
    for (char ch : in)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw Error(Errc::Parse, "empty ring element");
    std::vector<Term> terms;
    std::size_t i = 0;
    auto fail = [&](const char* why) {
      throw Error(Errc::Parse, std::string(why) + " in '" + std::string(in) + "'");
    };
    while (i < s.size()) {
      int sign = 1;
      while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -sign;
        ++i;
      }
      std::size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      BigInt c = 1;
      bool have_c = i > st;
      if (have_c) c = BigInt(s.substr(st, i - st));
      int e = 0;
      if (i < s.size() && s[i] == '*') {
        if (!have_c) fail("missing coefficient");
        ++i;
        if (i >= s.size() || s[i] != 'v') fail("expected v");
      }
      if (i < s.size() && s[i] == 'v') {
        ++i;
        e = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          int es = 1;
          if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            if (s[i] == '-') es = -1;
            ++i;
          }
          std::size_t est = i;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
          if (i == est) fail("missing exponent");
          e = es * std::stoi(s.substr(est, i - est));
        }
      } else if (!have_c) {
        fail("unexpected character");
      }
      if (i < s.size() && s[i] != '+' && s[i] != '-') fail("unexpected character");
      terms.emplace_back(e, sign * c);
    }
    return from_terms(std::move(terms));
  }

 private:
  static Laurent merge(const Laurent& a, const Laurent& b, bool sub) {
    Laurent r;
    r.t_.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first)) {
        r.t_.push_back(a.t_[i++]);
      } else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first) {
        r.t_.emplace_back(b.t_[j].first, sub ? BigInt(-b.t_[j].second) : b.t_[j].second);
        ++j;
      } else {
        BigInt c = sub ? BigInt(a.t_[i].second - b.t_[j].second) : BigInt(a.t_[i].second + b.t_[j].second);
        if (c != 0) r.t_.emplace_back(a.t_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> t_;
};

/// q-integer [n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d}) in Z[v^+-1].
inline Laurent qint(long long n, int d = 1) {
  if (d <= 0) throw Error(Errc::Internal, "qint: symmetrizer must be positive");
  if (n == 0) return {};
  if (n < 0) return -qint(-n, d);
  std::vector<Laurent::Term> t;
  for (long long j = 0; j < n; ++j) t.emplace_back(static_cast<int>(2 * d * (n - 1 - 2 * j)), BigInt(1));
  return Laurent::from_terms(std::move(t));
}

inline Laurent qfactorial(long long n, int d = 1) {
  if (n < 0) throw Error(Errc::Internal, "qfactorial of a negative integer");
  Laurent r(1);
  for (long long k = 2; k <= n; ++k) r *= qint(k, d);
  return r;
}

inline Laurent qbinom(long long n, long long k, int d = 1) {
  if (!(n >= k && k >= 0)) throw Error(Errc::Internal, "qbinom needs n >= k >= 0");
  auto q = Laurent::exact_div(qfactorial(n, d), qfactorial(k, d) * qfactorial(n - k, d));
  if (!q) throw Error(Errc::Internal, "qbinom: non-exact division");
  return *q;
}

/// Power of q = v^2 as a Laurent monomial.
inline Laurent qpow(int k) { return Laurent::vpow(2 * k); }

/// Element of the fraction field Q(v): num / den, reduced, den(0) != 0,
/// positive leading coefficient of den, no common factor in Z[v].
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const BigInt& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Laurent& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Laurent& n, const Laurent& d) { assign(n, d); }

  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.is_one(); }

  RatFunc operator-() const { return make_raw(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      if (a.den_.is_one()) return make_raw(a.num_ + b.num_, a.den_);
      return RatFunc(a.num_ + b.num_, a.den_);
    }
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return make_raw(a.num_ * b.num_, a.den_);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc inverse() const {
    if (is_zero()) throw Error(Errc::Internal, "inverse of zero in the fraction field");
    return RatFunc(den_, num_);
  }
  RatFunc shifted(int k) const { return make_raw(num_.shifted(k), den_); }

  std::string str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }
  static RatFunc parse(std::string_view s) {
    auto [n, d] = split_fraction(s);
    if (d.empty()) return RatFunc(Laurent::parse(n));
    Laurent dd = Laurent::parse(d);
    if (dd.is_zero()) throw Error(Errc::Parse, "zero denominator");
    return RatFunc(Laurent::parse(n), dd);
  }

  /// Splits "(a)/(b)" into a and b; b is empty when there is no denominator.
  static std::pair<std::string, std::string> split_fraction(std::string_view s) {
    std::string t;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    int depth = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] == '(') ++depth;
      if (t[i] == ')') --depth;
      if (t[i] == '/' && depth == 0) return {strip_parens(t.substr(0, i)), strip_parens(t.substr(i + 1))};
    }
    return {strip_parens(t), std::string()};
  }

 private:
  static std::string strip_parens(std::string s) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
    return s;
  }
  static RatFunc make_raw(Laurent n, Laurent d) {
    RatFunc r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    if (r.num_.is_zero()) r.den_ = Laurent(1);
    return r;
  }
  void assign(const Laurent& n, const Laurent& d) {
    if (d.is_zero()) throw Error(Errc::Internal, "zero denominator");
    if (n.is_zero()) {
      num_ = Laurent();
      den_ = Laurent(1);
      return;
    }
    int shift = n.min_exp() - d.min_exp();
    detail::Dense pn = n.dense(), pd = d.dense();
    if (pd.size() == 1) {
      BigInt g = big_gcd(detail::content(pn), pd[0]);
      if (pd[0] < 0) g = -g;
      detail::divide_content(pn, g);
      pd[0] /= g;
    } else {
      detail::Dense g = detail::poly_gcd(pn, pd);
      if (!(g.size() == 1 && g[0] == 1)) {
        pn = *detail::div_exact(pn, g);
        pd = *detail::div_exact(pd, g);
      }
      if (pd.back() < 0) {
        for (auto& x : pn) x = -x;
        for (auto& x : pd) x = -x;
      }
    }
    num_ = Laurent::from_dense(pn, shift);
    den_ = Laurent::from_dense(pd, 0);
  }

  Laurent num_;
  Laurent den_;
};

/// Declared denominators of a localization Z[v^+-1][S^-1]. Generators should be
/// pairwise coprime irreducible polynomials with nonzero constant term.
struct LocGens {
  std::vector<Laurent> gens;
  std::vector<std::string> names;
};

/// q^2 + 1 = v^4 + 1, the denominator of 1/[2]_q.
inline std::shared_ptr<const LocGens> loc_q2plus1() {
  static const auto g = std::make_shared<const LocGens>(LocGens{{Laurent::vpow(4) + Laurent(1)}, {"q^2+1"}});
  return g;
}

/// Element of Z[v^+-1][S^-1], stored as num / prod g_i^{e_i} with g_i not dividing num when e_i > 0.
class LocLaurent {
 public:
  LocLaurent() = default;
  LocLaurent(long long c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  LocLaurent(const Laurent& p) : num_(p) {}  // NOLINT(google-explicit-constructor)
  LocLaurent(std::shared_ptr<const LocGens> ctx, Laurent num, std::vector<int> e)
      : ctx_(std::move(ctx)), num_(std::move(num)), e_(std::move(e)) {
    normalize();
  }

  const Laurent& num() const { return num_; }
  const std::vector<int>& exps() const { return e_; }
  const std::shared_ptr<const LocGens>& ctx() const { return ctx_; }
  bool is_zero() const { return num_.is_zero(); }
  /// Denominator as an explicit Laurent polynomial.
  Laurent den() const {
    Laurent d(1);
    for (std::size_t i = 0; i < e_.size(); ++i) d *= ctx_->gens[i].pow(static_cast<unsigned>(e_[i]));
    return d;
  }

  LocLaurent operator-() const {
    LocLaurent r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend LocLaurent operator+(const LocLaurent& a, const LocLaurent& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    auto ctx = pick(a, b);
    std::size_t n = ctx ? ctx->gens.size() : 0;
    std::vector<int> e(n, 0);
    Laurent na = a.num_, nb = b.num_;
    for (std::size_t i = 0; i < n; ++i) {
      int ea = a.exp(i), eb = b.exp(i);
      e[i] = std::max(ea, eb);
      if (e[i] > ea) na *= ctx->gens[i].pow(static_cast<unsigned>(e[i] - ea));
      if (e[i] > eb) nb *= ctx->gens[i].pow(static_cast<unsigned>(e[i] - eb));
    }
    return LocLaurent(ctx, na + nb, std::move(e));
  }
  friend LocLaurent operator-(const LocLaurent& a, const LocLaurent& b) { return a + (-b); }
  friend LocLaurent operator*(const LocLaurent& a, const LocLaurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    auto ctx = pick(a, b);
    std::size_t n = ctx ? ctx->gens.size() : 0;
    std::vector<int> e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = a.exp(i) + b.exp(i);
    return LocLaurent(ctx, a.num_ * b.num_, std::move(e));
  }
  LocLaurent& operator+=(const LocLaurent& b) { return *this = *this + b; }
  LocLaurent& operator-=(const LocLaurent& b) { return *this = *this - b; }
  LocLaurent& operator*=(const LocLaurent& b) { return *this = *this * b; }
  friend bool operator==(const LocLaurent& a, const LocLaurent& b) {
    if (a.num_ != b.num_) return false;
    std::size_t n = std::max(a.e_.size(), b.e_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a.exp(i) != b.exp(i)) return false;
    return true;
  }
  friend bool operator!=(const LocLaurent& a, const LocLaurent& b) { return !(a == b); }

  /// The inverse of generator i.
  static LocLaurent gen_inverse(const std::shared_ptr<const LocGens>& ctx, std::size_t i) {
    std::vector<int> e(ctx->gens.size(), 0);
    e[i] = 1;
    return LocLaurent(ctx, Laurent(1), std::move(e));
  }

  /// Exact quotient a / b when b is a unit times declared generators, or b divides a.
  static std::optional<LocLaurent> exact_div(const LocLaurent& a, const LocLaurent& b) {
    if (b.is_zero()) throw Error(Errc::Internal, "division by zero");
    if (a.is_zero()) return LocLaurent{};
    auto ctx = pick(a, b);
    std::size_t n = ctx ? ctx->gens.size() : 0;
    // Split b.num into (generator powers) * rest.
    Laurent rest = b.num_;
    std::vector<int> gb(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      while (true) {
        auto q = Laurent::exact_div(rest, ctx->gens[i]);
        if (!q) break;
        rest = *q;
        ++gb[i];
      }
    }
    auto q = Laurent::exact_div(a.num_, rest);
    if (!q) return std::nullopt;
    std::vector<int> e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = a.exp(i) + gb[i];
    Laurent num = *q;
    for (std::size_t i = 0; i < n; ++i) {
      int bump = b.exp(i);
      if (bump) num *= ctx->gens[i].pow(static_cast<unsigned>(bump));
    }
    return LocLaurent(ctx, num, std::move(e));
  }

  std::string str() const {
    bool has_den = std::any_of(e_.begin(), e_.end(), [](int x) { return x > 0; });
    if (!has_den) return num_.str();
    return "(" + num_.str() + ")/(" + den().str() + ")";
  }

 private:
  int exp(std::size_t i) const { return i < e_.size() ? e_[i] : 0; }
  static std::shared_ptr<const LocGens> pick(const LocLaurent& a, const LocLaurent& b) {
    if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_)
      throw Error(Errc::Internal, "mixing localizations with different generators");
    return a.ctx_ ? a.ctx_ : b.ctx_;
  }
  void normalize() {
    if (!ctx_) {
      e_.clear();
      return;
    }
    e_.resize(ctx_->gens.size(), 0);
    if (num_.is_zero()) {
      std::fill(e_.begin(), e_.end(), 0);
      return;
    }
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] < 0) {
        num_ *= ctx_->gens[i].pow(static_cast<unsigned>(-e_[i]));
        e_[i] = 0;
      }
      while (e_[i] > 0) {
        auto q = Laurent::exact_div(num_, ctx_->gens[i]);
        if (!q) break;
        num_ = *q;
        --e_[i];
      }
    }
  }

  std::shared_ptr<const LocGens> ctx_;
  Laurent num_;
  std::vector<int> e_;
};

/// Element of Z[1/2]: num / 2^k with num odd or k = 0.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  Dyadic(const BigInt& c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  Dyadic(BigInt n, unsigned k) : num_(std::move(n)), k_(k) { normalize(); }

  const BigInt& num() const { return num_; }
  unsigned pow2() const { return k_; }
  bool is_zero() const { return num_ == 0; }

  Dyadic operator-() const { return Dyadic(-num_, k_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    unsigned k = std::max(a.k_, b.k_);
    BigInt n = (a.num_ << (k - a.k_)) + (b.num_ << (k - b.k_));
    return Dyadic(n, k);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) { return Dyadic(a.num_ * b.num_, a.k_ + b.k_); }
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
  Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }
  Dyadic& operator*=(const Dyadic& b) { return *this = *this * b; }
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.num_ == b.num_ && a.k_ == b.k_; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }

  /// Exact quotient in Z[1/2].
  static std::optional<Dyadic> exact_div(const Dyadic& a, const Dyadic& b) {
    if (b.is_zero()) throw Error(Errc::Internal, "division by zero");
    BigInt bn = b.num_;
    unsigned extra = 0;
    while ((bn & 1) == 0) {
      bn >>= 1;
      ++extra;
    }
    BigInt q, r;
    boost::multiprecision::divide_qr(a.num_, bn, q, r);
    if (r != 0) return std::nullopt;
    // a.num/2^ak / (bn*2^extra/2^bk) = q * 2^(bk) / 2^(ak+extra)
    return Dyadic(q << b.k_, a.k_ + extra);
  }

  std::string str() const {
    if (k_ == 0) return num_.str();
    return num_.str() + "/" + (BigInt(1) << k_).str();
  }
  static Dyadic parse(std::string_view s) {
    std::string t;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    auto slash = t.find('/');
    try {
      if (slash == std::string::npos) return Dyadic(BigInt(t));
      BigInt den(t.substr(slash + 1));
      unsigned k = 0;
      while (den > 1 && (den & 1) == 0) {
        den >>= 1;
        ++k;
      }
      if (den != 1) throw Error(Errc::Parse, "denominator is not a power of 2");
      return Dyadic(BigInt(t.substr(0, slash)), k);
    } catch (const std::runtime_error& e) {
      throw Error(Errc::Parse, std::string("bad dyadic '") + t + "'");
    }
  }

 private:
  void normalize() {
    if (num_ == 0) {
      k_ = 0;
      return;
    }
    while (k_ > 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --k_;
    }
  }
  BigInt num_ = 0;
  unsigned k_ = 0;
};

/// Residue class modulo n (n > 1). A default-constructed element adopts the
/// modulus of the other operand.
class ZMod {
 public:
  ZMod() = default;
  ZMod(BigInt v, BigInt n) : v_(std::move(v)), n_(std::move(n)) { reduce(); }

  const BigInt& value() const { return v_; }
  const BigInt& modulus() const { return n_; }
  bool is_zero() const { return v_ == 0; }

  ZMod operator-() const { return ZMod(-v_, n_); }
  friend ZMod operator+(const ZMod& a, const ZMod& b) { return ZMod(a.v_ + b.v_, mod_of(a, b)); }
  friend ZMod operator-(const ZMod& a, const ZMod& b) { return ZMod(a.v_ - b.v_, mod_of(a, b)); }
  friend ZMod operator*(const ZMod& a, const ZMod& b) { return ZMod(a.v_ * b.v_, mod_of(a, b)); }
  ZMod& operator+=(const ZMod& b) { return *this = *this + b; }
  ZMod& operator-=(const ZMod& b) { return *this = *this - b; }
  ZMod& operator*=(const ZMod& b) { return *this = *this * b; }
  friend bool operator==(const ZMod& a, const ZMod& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ZMod& a, const ZMod& b) { return !(a == b); }

  std::optional<ZMod> inverse() const {
    if (n_ == 0) throw Error(Errc::Internal, "ZMod without modulus");
    // extended Euclid
    BigInt r0 = n_, r1 = v_, s0 = 0, s1 = 1;
    while (r1 != 0) {
      BigInt q = r0 / r1;
      BigInt t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    if (r0 != 1) return std::nullopt;
    return ZMod(s0, n_);
  }
  /// Some x with b*x = a when one exists.
  static std::optional<ZMod> exact_div(const ZMod& a, const ZMod& b) {
    BigInt n = mod_of(a, b);
    BigInt g = big_gcd(b.v_, n);
    if (g == 0) return std::nullopt;
    if (a.v_ % g != 0) return std::nullopt;
    ZMod bb(b.v_ / g, n / g);
    auto inv = bb.inverse();
    if (!inv) return std::nullopt;
    return ZMod((a.v_ / g) * inv->v_, n);
  }

  std::string str() const { return v_.str(); }

 private:
  static BigInt mod_of(const ZMod& a, const ZMod& b) {
    if (a.n_ != 0 && b.n_ != 0 && a.n_ != b.n_) throw Error(Errc::Internal, "mixing different moduli");
    return a.n_ != 0 ? a.n_ : b.n_;
  }
  void reduce() {
    if (n_ == 0) return;
    v_ %= n_;
    if (v_ < 0) v_ += n_;
  }
  BigInt v_ = 0;
  BigInt n_ = 0;
};

// ---------------------------------------------------------------------------
// Ring objects. Each provides: zero, one, from_int, vpow (image of v^k),
// mul_vpow, divide (exact), inverse, two_is_zero_divisor, name, format, parse.

struct LaurentRing {
  using elem = Laurent;
  static constexpr const char* tag = "Zv";
  elem zero() const { return {}; }
  elem one() const { return Laurent(1); }
  elem from_int(const BigInt& c) const { return Laurent(c); }
  elem vpow(int k) const { return Laurent::vpow(k); }
  elem mul_vpow(const elem& a, int k) const { return a.shifted(k); }
  static bool is_zero(const elem& a) { return a.is_zero(); }
  std::optional<elem> divide(const elem& a, const elem& b) const { return Laurent::exact_div(a, b); }
  std::optional<elem> inverse(const elem& a) const {
    if (!a.is_unit()) return std::nullopt;
    return Laurent::monomial(a.lead(), -a.min_exp());
  }
  bool two_is_zero_divisor() const { return false; }
  std::string name() const { return "Z[v^+-1]"; }
  std::string format(const elem& a) const { return a.str(); }
  elem parse(std::string_view s) const { return Laurent::parse(s); }
};

struct RatFuncRing {
  using elem = RatFunc;
  static constexpr const char* tag = "Frac";
  elem zero() const { return {}; }
  elem one() const { return RatFunc(1); }
  elem from_int(const BigInt& c) const { return RatFunc(c); }
  elem vpow(int k) const { return RatFunc(Laurent::vpow(k)); }
  elem mul_vpow(const elem& a, int k) const { return a.shifted(k); }
  static bool is_zero(const elem& a) { return a.is_zero(); }
  std::optional<elem> divide(const elem& a, const elem& b) const { return a / b; }
  std::optional<elem> inverse(const elem& a) const {
    if (a.is_zero()) return std::nullopt;
    return a.inverse();
  }
  bool two_is_zero_divisor() const { return false; }
  std::string name() const { return "Q(v)"; }
  std::string format(const elem& a) const { return a.str(); }
  elem parse(std::string_view s) const { return RatFunc::parse(s); }
};

struct LocRing {
  using elem = LocLaurent;
  static constexpr const char* tag = "ZvLoc";
  std::shared_ptr<const LocGens> ctx = loc_q2plus1();
  elem zero() const { return {}; }
  elem one() const { return LocLaurent(ctx, Laurent(1), {}); }
  elem from_int(const BigInt& c) const { return LocLaurent(ctx, Laurent(c), {}); }
  elem vpow(int k) const { return LocLaurent(ctx, Laurent::vpow(k), {}); }
  elem mul_vpow(const elem& a, int k) const { return LocLaurent(ctx, a.num().shifted(k), a.exps()); }
  static bool is_zero(const elem& a) { return a.is_zero(); }
  std::optional<elem> divide(const elem& a, const elem& b) const { return LocLaurent::exact_div(a, b); }
  std::optional<elem> inverse(const elem& a) const { return LocLaurent::exact_div(one(), a); }
  bool two_is_zero_divisor() const { return false; }
  std::string name() const {
    std::string s = "Z[v^+-1";
    for (const auto& n : ctx->names) s += ", (" + n + ")^-1";
    return s + "]";
  }
  std::string format(const elem& a) const { return a.str(); }
  /// Parses "(num)/(den)" where den must factor into declared generators times a unit.
  elem parse(std::string_view s) const {
    auto [n, d] = RatFunc::split_fraction(s);
    elem num(ctx, Laurent::parse(n), {});
    if (d.empty()) return num;
    auto q = divide(num, elem(ctx, Laurent::parse(d), {}));
    if (!q) throw Error(Errc::Parse, "denominator outside the declared localization");
    return *q;
  }
  /// Converts a fraction-field element into this ring, if it lies in it.
  std::optional<elem> from_ratfunc(const RatFunc& x) const {
    return divide(elem(ctx, x.num(), {}), elem(ctx, x.den(), {}));
  }
};

/// Z with v -> vsign (a unit of Z).
struct IntegerRing {
  using elem = BigInt;
  static constexpr const char* tag = "Z";
  int vsign = 1;
  elem zero() const { return 0; }
  elem one() const { return 1; }
  elem from_int(const BigInt& c) const { return c; }
  elem vpow(int k) const { return (vsign == -1 && (k % 2 != 0)) ? -1 : 1; }
  elem mul_vpow(const elem& a, int k) const { return (vsign == -1 && (k % 2 != 0)) ? BigInt(-a) : a; }
  static bool is_zero(const elem& a) { return a == 0; }
  std::optional<elem> divide(const elem& a, const elem& b) const {
    if (b == 0) throw Error(Errc::Internal, "division by zero");
    BigInt q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0) return std::nullopt;
    return q;
  }
  std::optional<elem> inverse(const elem& a) const {
    if (a == 1 || a == -1) return a;
    return std::nullopt;
  }
  bool two_is_zero_divisor() const { return false; }
  std::string name() const { return vsign == 1 ? "Z (v->1)" : "Z (v->-1)"; }
  std::string format(const elem& a) const { return a.str(); }
  elem parse(std::string_view s) const {
    std::string t;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    try {
      return BigInt(t);
    } catch (const std::runtime_error&) {
      throw Error(Errc::Parse, "bad integer '" + t + "'");
    }
  }
};

/// Z[1/2] with v -> vimg (must be +-2^j).
struct DyadicRing {
  using elem = Dyadic;
  static constexpr const char* tag = "ZHalf";
  Dyadic vimg = Dyadic(1);
  elem zero() const { return {}; }
  elem one() const { return Dyadic(1); }
  elem from_int(const BigInt& c) const { return Dyadic(c); }
  elem vpow(int k) const {
    Dyadic base = vimg;
    if (k < 0) {
      base = *inverse(vimg);
      k = -k;
    }
    Dyadic r(1);
    for (int i = 0; i < k; ++i) r *= base;
    return r;
  }
  elem mul_vpow(const elem& a, int k) const { return a * vpow(k); }
  static bool is_zero(const elem& a) { return a.is_zero(); }
  std::optional<elem> divide(const elem& a, const elem& b) const { return Dyadic::exact_div(a, b); }
  std::optional<elem> inverse(const elem& a) const { return Dyadic::exact_div(Dyadic(1), a); }
  bool two_is_zero_divisor() const { return false; }
  std::string name() const { return "Z[1/2] (v->" + vimg.str() + ")"; }
  std::string format(const elem& a) const { return a.str(); }
  elem parse(std::string_view s) const { return Dyadic::parse(s); }
};

/// Z/n with v -> vimg (must be a unit mod n). This is the quotient
/// Z[v^+-1]/(n, v - vimg).
struct ZModRing {
  using elem = ZMod;
  static constexpr const char* tag = "Zmod";
  BigInt n = 2;
  BigInt vimg = 1;
  ZModRing() = default;
  ZModRing(BigInt modulus, BigInt v) : n(std::move(modulus)), vimg(std::move(v)) {
    if (n < 2) throw Error(Errc::Internal, "modulus must be at least 2");
    if (!ZMod(vimg, n).inverse()) throw Error(Errc::SpecializationUndefined, "image of v is not a unit mod n");
  }
  elem zero() const { return ZMod(0, n); }
  elem one() const { return ZMod(1, n); }
  elem from_int(const BigInt& c) const { return ZMod(c, n); }
  elem vpow(int k) const {
    BigInt base = vimg;
    if (k < 0) {
      base = ZMod(vimg, n).inverse()->value();
      k = -k;
    }
    return ZMod(boost::multiprecision::powm(base, BigInt(k), n), n);
  }
  elem mul_vpow(const elem& a, int k) const { return a * vpow(k); }
  static bool is_zero(const elem& a) { return a.is_zero(); }
  std::optional<elem> divide(const elem& a, const elem& b) const { return ZMod::exact_div(a, b); }
  std::optional<elem> inverse(const elem& a) const { return ZMod(a.value(), n).inverse(); }
  bool two_is_zero_divisor() const { return n % 2 == 0; }
  std::string name() const { return "Z/" + n.str() + " (v->" + vimg.str() + ")"; }
  std::string format(const elem& a) const { return a.str(); }
  elem parse(std::string_view s) const { return ZMod(IntegerRing{}.parse(s), n); }
};

// ---------------------------------------------------------------------------
// Specializations: ring homomorphisms out of Z[v^+-1] (and its localizations /
// fraction field) determined by the target ring's image of v.

template <class Dst>
typename Dst::elem specialize(const Laurent& x, const Dst& dst) {
  typename Dst::elem r = dst.zero();
  for (const auto& [e, c] : x.terms()) r += dst.from_int(c) * dst.vpow(e);
  return r;
}

template <class Dst>
typename Dst::elem specialize(const LocLaurent& x, const Dst& dst) {
  typename Dst::elem r = specialize(x.num(), dst);
  for (std::size_t i = 0; i < x.exps().size(); ++i) {
    if (x.exps()[i] == 0) continue;
    auto g = specialize(x.ctx()->gens[i], dst);
    auto inv = dst.inverse(g);
    if (!inv)
      throw Error(Errc::SpecializationUndefined,
                  "denominator " + x.ctx()->names[i] + " maps to the non-unit " + dst.format(g) + " in " + dst.name());
    for (int k = 0; k < x.exps()[i]; ++k) r *= *inv;
  }
  return r;
}

template <class Dst>
typename Dst::elem specialize(const RatFunc& x, const Dst& dst) {
  auto d = specialize(x.den(), dst);
  auto inv = dst.inverse(d);
  if (!inv)
    throw Error(Errc::SpecializationUndefined,
                "denominator " + x.den().str() + " maps to the non-unit " + dst.format(d) + " in " + dst.name());
  return specialize(x.num(), dst) * *inv;
}

/// A specialization map recorded with its source and target descriptions.
template <class Dst>
struct Specialization {
  Dst target;
  std::string source = "Z[v^+-1]";

  template <class X>
  typename Dst::elem operator()(const X& x) const {
    return specialize(x, target);
  }
  std::string describe() const { return source + " -> " + target.name(); }
};

}  // namespace qcf
