/**
 * @file cluster.hpp
 * @brief Cluster variables as expansions in a fixed reference seed, mutation by
 * exact division, g-vectors and F-polynomials, membership checks, tropical
 * transformations and exchange-graph exploration.
 */
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcf/qtorus.hpp"
#include "qcf/seed.hpp"
#include "qcf/util.hpp"

namespace qcf {

/// Cluster of the current seed, expressed in the torus of the reference seed.
template <class R>
struct ClusterState {
  using Poly = TwistedLaurent<R>;
  std::shared_ptr<const Torus<R>> torus;  // reference torus
  Seed ref;
  Seed cur;
  std::vector<Poly> vars;  // by position
  std::vector<int> path;   // vertex labels, first mutation first
};

template <class R>
ClusterState<R> initial_state(const Seed& s, R ring) {
  check_assumption(s, ring.two_is_zero_divisor(), ring.name());
  ClusterState<R> st;
  st.torus = make_torus(std::move(ring), s.Lambda);
  st.ref = s;
  st.cur = s;
  for (std::size_t i = 0; i < s.size(); ++i) st.vars.push_back(TwistedLaurent<R>::var(st.torus, i));
  return st;
}

/// Normalized monomial X^n of variables X (pairwise quasi-commuting with form L), n >= 0:
/// X^n = v^{-sum_{i<j} L_ij n_i n_j} X_1^{n_1} ... X_m^{n_m}.
template <class R>
TwistedLaurent<R> normalized_monomial(const std::vector<TwistedLaurent<R>>& X, const IntMat& L, const Exp& n,
                                      const std::shared_ptr<const Torus<R>>& tor) {
  TwistedLaurent<R> r = TwistedLaurent<R>::one(tor);
  Int tw = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 0) throw Error(Errc::Internal, "normalized monomial needs nonnegative exponents");
    if (n[i] == 0) continue;
    r = r * X[i].pow(static_cast<unsigned>(n[i]));
    for (std::size_t j = i + 1; j < n.size(); ++j) tw += L[i][j] * n[i] * n[j];
  }
  return r.vshift(static_cast<int>(-tw));
}

/// The two exchange monomial exponents at vertex position k: (sum [-b_jk]_+ f_j, sum [b_jk]_+ f_j).
inline std::pair<Exp, Exp> exchange_exponents(const Seed& s, std::size_t k) {
  Exp am(s.size(), 0), ap(s.size(), 0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    am[j] = static_cast<int>(pos_part(-s.b(j, k)));
    ap[j] = static_cast<int>(pos_part(s.b(j, k)));
  }
  return {am, ap};
}

/// Mutates the cluster at vertex label k; the new x_k satisfies
/// x_k * x_k' = v^{Lambda(f_k,a-)} X^{a-} + v^{Lambda(f_k,a+)} X^{a+}.
template <class R>
ClusterState<R> mutate_variables(const ClusterState<R>& st, int k_id) {
  const Seed& s = st.cur;
  std::size_t k = s.upos(k_id);
  auto [am, ap] = exchange_exponents(s, k);
  Exp fk = unit_exp(s.size(), k);
  auto rhs = normalized_monomial(st.vars, s.Lambda, am, st.torus).vshift(static_cast<int>(bilinear(s.Lambda, fk, am))) +
             normalized_monomial(st.vars, s.Lambda, ap, st.torus).vshift(static_cast<int>(bilinear(s.Lambda, fk, ap)));
  auto q = rhs.left_divide(st.vars[k]);
  if (!q)
    throw Error(Errc::LaurentViolation, "exchange binomial not divisible by x_" + std::to_string(k_id) + " after path of length " +
                                            std::to_string(st.path.size()));
  if (st.vars[k] * *q != rhs) throw Error(Errc::Internal, "exchange relation fails after division");
  ClusterState<R> out = st;
  out.vars[k] = std::move(*q);
  out.cur = mutate_matrices(s, k_id);
  out.path.push_back(k_id);
  return out;
}

template <class R>
ClusterState<R> mutate_variables(ClusterState<R> st, const std::vector<int>& seq) {
  for (int k : seq) st = mutate_variables(st, k);
  return st;
}

/// True when the exchange relation at k holds between st and its mutation.
template <class R>
bool exchange_relation_holds(const ClusterState<R>& st, const ClusterState<R>& mu, int k_id) {
  const Seed& s = st.cur;
  std::size_t k = s.upos(k_id);
  auto [am, ap] = exchange_exponents(s, k);
  Exp fk = unit_exp(s.size(), k);
  auto rhs = normalized_monomial(st.vars, s.Lambda, am, st.torus).vshift(static_cast<int>(bilinear(s.Lambda, fk, am))) +
             normalized_monomial(st.vars, s.Lambda, ap, st.torus).vshift(static_cast<int>(bilinear(s.Lambda, fk, ap)));
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != k && st.vars[i] != mu.vars[i]) return false;
  return st.vars[k] * mu.vars[k] == rhs;
}

/// Rewrites z, given in the torus of a seed with form L, in terms of images X of
/// that seed's variables (all inside a common target torus). Returns nullopt when
/// the result is not Laurent over the coefficient ring.
template <class R>
std::optional<TwistedLaurent<R>> substitute(const TwistedLaurent<R>& z, const IntMat& L,
                                            const std::vector<TwistedLaurent<R>>& X,
                                            const std::shared_ptr<const Torus<R>>& target) {
  const std::size_t n = L.size();
  if (z.is_zero()) return TwistedLaurent<R>(target);
  auto [lo, hi] = z.bounds();
  Exp d(n, 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = lo[i] < 0 ? -lo[i] : 0;
  const R& ring = target->ring;
  TwistedLaurent<R> P(target);
  for (const auto& [m, c] : z.terms()) {
    Exp md = exp_add(m, d);
    auto cc = ring.mul_vpow(c, static_cast<int>(bilinear(L, d, md)));
    P += normalized_monomial(X, L, md, target).scaled(cc);
  }
  bool trivial = std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
  if (trivial) return P;
  return P.left_divide(normalized_monomial(X, L, d, target));
}

/// The variables of seed mu_{path}(s), re-expressed: returns the cluster of s
/// written in the torus of s' = mu_path(s). Path is applied first-element-first.
template <class R>
ClusterState<R> reverse_state(const Seed& s, const std::vector<int>& path, const R& ring) {
  Seed sp = mutate_matrices(s, path);
  auto st = initial_state(sp, ring);
  std::vector<int> rev(path.rbegin(), path.rend());
  return mutate_variables(st, rev);
}

/// z (in the torus of s) re-expanded in the torus of mu_path(s).
template <class R>
std::optional<TwistedLaurent<R>> expand_in(const TwistedLaurent<R>& z, const Seed& s, const std::vector<int>& path) {
  auto back = reverse_state(s, path, z.ring());
  return substitute(z, s.Lambda, back.vars, back.torus);
}

// ---------------------------------------------------------------------------
// g-vectors and F-polynomials

template <class R>
struct ClusterVar {
  TwistedLaurent<R> expansion;
  std::vector<int> path;
  int index = 0;  // vertex label
  Exp g;
  std::map<IntVec, typename R::elem> fpoly;  // n -> c_n
};

template <class R>
struct GF {
  Exp g;
  std::map<IntVec, typename R::elem> f;
};

/// Reads off x^g sum c_n x^{g + Btilde n}; requires c_0 = 1 and frozen part of g >= 0.
template <class R>
GF<R> extract_gf(const TwistedLaurent<R>& z, const Seed& s, const Dominance& dom) {
  auto deg = degree_of(z, dom);
  if (!deg) throw Error(Errc::NotPointed, "expansion has no degree");
  const R& ring = z.ring();
  if (deg->leading != ring.one()) throw Error(Errc::NotPointed, "leading coefficient is " + ring.format(deg->leading));
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.frozen[i] && deg->g[i] < 0) throw Error(Errc::NotPointed, "frozen part of the degree is negative");
  GF<R> out{deg->g, {}};
  for (const auto& [m, c] : z.terms()) {
    auto n = dom.leq(m, deg->g);
    if (!n) throw Error(Errc::Internal, "term not dominated by the degree");
    // the product x^g . x^{Btilde n} is the untwisted one, so c_n is read off directly
    out.f.emplace(*n, c);
  }
  return out;
}

template <class R>
std::string fpoly_str(const std::map<IntVec, typename R::elem>& f, const R& ring) {
  std::string s;
  for (const auto& [n, c] : f) {
    if (!s.empty()) s += " + ";
    s += "(" + ring.format(c) + ")*y^(";
    for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
    s += ")";
  }
  return s.empty() ? "0" : s;
}

/// Coefficient-wise image of a state under a specialization; the seed data is kept.
template <class Dst, class R>
ClusterState<Dst> specialize_state(const ClusterState<R>& st, const Specialization<Dst>& spec) {
  ClusterState<Dst> out;
  out.torus = make_torus(spec.target, st.torus->lambda);
  out.ref = st.ref;
  out.cur = st.cur;
  out.path = st.path;
  for (const auto& x : st.vars) out.vars.push_back(x.map_coeffs(out.torus, spec));
  return out;
}

template <class Dst, class R>
TwistedLaurent<Dst> specialize_poly(const TwistedLaurent<R>& z, const Specialization<Dst>& spec) {
  return z.map_coeffs(make_torus(spec.target, z.torus()->lambda), spec);
}

/// Equality of supports and coefficients, ignoring the torus form.
template <class R>
bool same_terms(const TwistedLaurent<R>& a, const TwistedLaurent<R>& b) {
  return a.terms() == b.terms();
}

// ---------------------------------------------------------------------------
// Membership checks

struct MembershipReport {
  bool pass = true;
  std::size_t seeds_checked = 0;
  int depth = 0;
  std::vector<int> witness;   // path to the failing seed
  std::string reason;
  std::optional<int> nu_fail;  // the offending nu_j value
  int nu_vertex = 0;
};

/// All mutation sequences of length <= depth with no immediate repetition, ascending order.
inline std::vector<std::vector<int>> mutation_sequences(const Seed& s, int depth) {
  std::vector<std::vector<int>> out{{}};
  std::vector<int> labels;
  for (std::size_t p : s.uf) labels.push_back(s.ids[p]);
  for (std::size_t t = 0; t < out.size(); ++t) {
    if (static_cast<int>(out[t].size()) >= depth) continue;
    for (int k : labels) {
      if (!out[t].empty() && out[t].back() == k) continue;
      auto q = out[t];
      q.push_back(k);
      out.push_back(std::move(q));
    }
  }
  return out;
}

/// Bounded check that z (in the torus of s) is Laurent in every seed within depth;
/// with compactified, also nu_j >= 0 for frozen j in each of those seeds.
template <class R>
MembershipReport upper_membership_bounded(const TwistedLaurent<R>& z, const Seed& s, int depth, bool compactified) {
  MembershipReport rep;
  rep.depth = depth;
  const auto paths = mutation_sequences(s, depth);
  // per path: empty when fine, otherwise the failing report
  auto results = parallel_map<std::optional<MembershipReport>>(paths.size(), [&](std::size_t t) -> std::optional<MembershipReport> {
    const auto& path = paths[t];
    std::optional<TwistedLaurent<R>> e = path.empty() ? std::optional<TwistedLaurent<R>>(z) : expand_in(z, s, path);
    MembershipReport bad;
    bad.pass = false;
    bad.witness = path;
    if (!e) {
      bad.reason = "not Laurent";
      return bad;
    }
    if (compactified)
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (!s.frozen[j]) continue;
        auto nu = vanishing_order(*e, j);
        if (nu && *nu < 0) {
          bad.reason = "negative order of vanishing at a frozen vertex";
          bad.nu_fail = *nu;
          bad.nu_vertex = s.ids[j];
          return bad;
        }
      }
    return std::nullopt;
  });
  for (std::size_t t = 0; t < paths.size(); ++t) {
    ++rep.seeds_checked;
    if (results[t]) {
      MembershipReport bad = *results[t];
      bad.depth = depth;
      bad.seeds_checked = rep.seeds_checked;
      return bad;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Tropical machinery

/// Adjacent tropical transformation at vertex label k.
inline Exp tropical_transform(const Exp& m, const Seed& s, int k_id) {
  std::size_t k = s.upos(k_id);
  Exp out = m;
  out[k] = -m[k];
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == k) continue;
    Int bik = s.b(i, k);
    out[i] = static_cast<int>(m[i] + pos_part(bik) * pos_part(m[k]) - pos_part(-bik) * pos_part(-m[k]));
  }
  return out;
}

/// Composite along a path starting at s.
inline Exp tropical_along(Exp m, Seed s, const std::vector<int>& path) {
  for (int k : path) {
    m = tropical_transform(m, s, k);
    s = mutate_matrices(s, k);
  }
  return m;
}

struct PointedReport {
  bool ok = true;
  std::vector<int> witness;
  Exp got, expected;
  std::string reason;
};

/// For each path, z re-expanded in mu_path(s) must have degree phi(deg^s z).
template <class R>
PointedReport compatibly_pointed_check(const TwistedLaurent<R>& z, const Seed& s,
                                       const std::vector<std::vector<int>>& paths) {
  auto d0 = degree_of(z, Dominance(s.B));
  if (!d0) throw Error(Errc::NoDegree, "z has no degree in the initial seed");
  PointedReport rep;
  for (const auto& path : paths) {
    Seed sp = mutate_matrices(s, path);
    Exp expect = tropical_along(d0->g, s, path);
    auto e = path.empty() ? std::optional<TwistedLaurent<R>>(z) : expand_in(z, s, path);
    if (!e) throw Error(Errc::LaurentViolation, "z is not Laurent along a listed path");
    auto d = degree_of(*e, Dominance(sp.B));
    if (!d || d->g != expect) {
      rep.ok = false;
      rep.witness = path;
      rep.expected = expect;
      if (d) rep.got = d->g;
      rep.reason = d ? "degree differs from the tropical image" : "no degree";
      return rep;
    }
  }
  return rep;
}

/// b_jk >= 0 for all unfrozen k.
inline bool optimized_check(const Seed& s, int j_id) {
  std::size_t j = s.pos(j_id);
  if (!s.frozen[j]) throw Error(Errc::NotFrozen, "vertex " + std::to_string(j_id) + " is not frozen");
  for (std::size_t k : s.uf)
    if (s.b(j, k) < 0) return false;
  return true;
}

/// Verifies a witness for injective-reachability: the principal parts of s and
/// s' = mu_path(s) agree under sigma, and deg^s x_{sigma k}(s') lies in -f_k + frozen span.
/// sigma maps unfrozen labels of s to unfrozen labels of s'.
template <class R>
bool injective_reachable_witness(const Seed& s, const std::vector<int>& path, const std::map<int, int>& sigma,
                                 const R& ring) {
  auto st = mutate_variables(initial_state(s, ring), path);
  const Seed& sp = st.cur;
  Dominance dom(s.B);
  for (std::size_t k : s.uf) {
    auto it = sigma.find(s.ids[k]);
    if (it == sigma.end()) return false;
    std::size_t sk = sp.upos(it->second);
    for (std::size_t l : s.uf) {
      std::size_t sl = sp.upos(sigma.at(s.ids[l]));
      if (s.b(l, k) != sp.b(sl, sk)) return false;
    }
    GF<R> gf;
    try {
      gf = extract_gf(st.vars[sk], s, dom);
    } catch (const Error& e) {
      if (e.code() == Errc::NotPointed) return false;
      throw;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.frozen[i]) continue;
      if (gf.g[i] != (i == k ? -1 : 0)) return false;
    }
  }
  return true;
}

struct A1Report {
  bool pass = true;
  bool isolated = false;
  int bound = 0;
  std::size_t products_checked = 0;
  std::string reason;
};

/// Basis check for a seed with one unfrozen vertex: x_k^r and x_k'^r have pure
/// x_k-grade r and -r, and products x_k^a x_k'^b reduce to a frozen-Laurent multiple
/// of one basis element.
template <class R>
A1Report a1_basis_check(const Seed& s, int bound, const R& ring) {
  A1Report rep;
  rep.bound = bound;
  if (s.nuf() != 1) {
    rep.pass = false;
    rep.reason = "exactly one unfrozen vertex required";
    return rep;
  }
  auto st = initial_state(s, ring);
  const std::size_t k = s.uf[0];
  const int kid = s.ids[k];
  rep.isolated = !isolated_vertices(s).empty();
  auto mu = mutate_variables(st, kid);
  const auto& x = st.vars[k];
  const auto& xp = mu.vars[k];
  auto grade_is = [&](const TwistedLaurent<R>& z, int g) {
    if (z.is_zero()) return false;
    for (const auto& [m, c] : z.terms())
      if (m[k] != g) return false;
    return true;
  };
  std::vector<TwistedLaurent<R>> xpow{TwistedLaurent<R>::one(st.torus)}, xppow{TwistedLaurent<R>::one(st.torus)};
  for (int r = 1; r <= bound; ++r) {
    xpow.push_back(xpow.back() * x);
    xppow.push_back(xppow.back() * xp);
  }
  for (int r = 0; r <= bound; ++r)
    if (!grade_is(xpow[r], r) || !grade_is(xppow[r], -r)) {
      rep.pass = false;
      rep.reason = "power " + std::to_string(r) + " is not homogeneous";
      return rep;
    }
  for (int a = 0; a <= bound; ++a)
    for (int b = 0; b <= bound; ++b) {
      ++rep.products_checked;
      auto p = xpow[a] * xppow[b];
      int g = a - b;
      auto c = g >= 0 ? p.right_divide(xpow[g]) : p.right_divide(xppow[-g]);
      if (!c || !grade_is(*c, 0)) {
        rep.pass = false;
        rep.reason = "product x^" + std::to_string(a) + " x'^" + std::to_string(b) + " does not reduce";
        return rep;
      }
      if (rep.isolated && a == b) {
        auto two = TwistedLaurent<R>::constant(st.torus, ring.from_int(BigInt(1) << a));
        if (p != two) {
          rep.pass = false;
          rep.reason = "isolated vertex: x^r x'^r differs from 2^r";
          return rep;
        }
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Exchange graph

template <class R>
struct ExchangeGraph {
  std::vector<ClusterState<R>> nodes;
  std::vector<std::tuple<std::size_t, int, std::size_t>> edges;  // (from, vertex label, to)
  bool closed = false;
  int max_depth = 0;
  std::vector<TwistedLaurent<R>> variables;  // distinct unfrozen cluster variables
  std::size_t initial_count = 0;
};

template <class R>
std::vector<std::string> cluster_key(const ClusterState<R>& st) {
  std::vector<std::string> k;
  for (std::size_t p : st.cur.uf) k.push_back(st.vars[p].str());
  std::sort(k.begin(), k.end());
  return k;
}

/// Breadth-first exploration; seeds are identified when their unfrozen clusters
/// agree as sets and the matrices match under the induced permutation.
template <class R>
ExchangeGraph<R> explore(const Seed& s, const R& ring, int max_depth) {
  ExchangeGraph<R> g;
  g.max_depth = max_depth;
  g.nodes.push_back(initial_state(s, ring));
  std::map<std::vector<std::string>, std::vector<std::size_t>> index;
  index[cluster_key(g.nodes[0])].push_back(0);
  std::set<std::string> seen_vars;
  auto note_vars = [&](const ClusterState<R>& st) {
    for (std::size_t p : st.cur.uf)
      if (seen_vars.insert(st.vars[p].str()).second) g.variables.push_back(st.vars[p]);
  };
  note_vars(g.nodes[0]);
  g.initial_count = g.variables.size();
  std::vector<int> depth{0};
  bool truncated = false;
  for (std::size_t t = 0; t < g.nodes.size(); ++t) {
    std::vector<int> labels;
    for (std::size_t p : g.nodes[t].cur.uf) labels.push_back(g.nodes[t].cur.ids[p]);
    for (int k : labels) {
      auto nb = mutate_variables(g.nodes[t], k);
      auto key = cluster_key(nb);
      std::optional<std::size_t> found;
      for (std::size_t cand : index[key]) {
        const auto& other = g.nodes[cand];
        auto allow = [&](std::size_t a, std::size_t b) { return nb.vars[a] == other.vars[b]; };
        if (seeds_equal_up_to_permutation(nb.cur, other.cur, allow)) {
          found = cand;
          break;
        }
      }
      if (!found && depth[t] >= max_depth) {
        truncated = true;
        continue;
      }
      if (!found) {
        found = g.nodes.size();
        index[key].push_back(*found);
        note_vars(nb);
        g.nodes.push_back(std::move(nb));
        depth.push_back(depth[t] + 1);
      }
      g.edges.emplace_back(t, k, *found);
    }
  }
  g.closed = !truncated;
  return g;
}

}  // namespace qcf
