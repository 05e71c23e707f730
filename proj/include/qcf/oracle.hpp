/**
 * @file oracle.hpp
 * @brief Checks BZ seeds against generalized quantum minors: the initial cluster
 * is the labelled minors, and every one-step mutation is a minor identity.
 */
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qcf/bzseed.hpp"
#include "qcf/cluster.hpp"
#include "qcf/qgroup.hpp"
#include "qcf/util.hpp"

namespace qcf {

struct MinorTable {
  std::shared_ptr<const RootData> rd;
  std::map<int, ModulePtr> modules;  // by fundamental index

  ModulePtr module(int i) {
    auto it = modules.find(i);
    if (it != modules.end()) return it->second;
    auto m = std::make_shared<const Module>(fundamental_module(rd, i));
    modules.emplace(i, m);
    return m;
  }
  MatrixCoeff minor(int i, const IntVec& gamma, const IntVec& delta) { return minor_by_weights(module(i), gamma, delta); }
};

/// Ordered product c_1^{a_1} ... c_n^{a_n}; the unit for a = 0.
inline MatrixCoeff ordered_product(const std::vector<MatrixCoeff>& c, const Exp& a, const std::shared_ptr<const RootData>& rd) {
  std::optional<MatrixCoeff> out;
  for (std::size_t j = 0; j < c.size(); ++j)
    for (int t = 0; t < a[j]; ++t) out = out ? product(*out, c[j]) : c[j];
  return out ? *out : unit_coeff(rd);
}

struct CommutationCheck {
  int i = 0, j = 0;  // vertex ids
  bool ok = false;
};

struct ExchangeCheck {
  int k = 0;  // vertex id
  std::string new_label;
  bool expressed = false;  // x_k' found as a minor or a combination of products of two minors
  bool span_equal = false;
  bool words_equal = false;
  int word_bound = 0;
  bool ok() const { return expressed && span_equal && words_equal; }
};

struct BZOracleReport {
  std::vector<CommutationCheck> commutations;
  std::vector<ExchangeCheck> exchanges;
  bool ok() const {
    for (const auto& c : commutations)
      if (!c.ok) return false;
    for (const auto& e : exchanges)
      if (!e.ok()) return false;
    return !exchanges.empty();
  }
};

/// Minors quasi-commute as the cluster variables do: D_i D_j = q^{Lambda_ij} D_j D_i.
/// Each first-step mutation x_k' is the minor with labels sum a_j (gamma_j, delta_j) - (gamma_k, delta_k),
/// or failing that a combination of products of two minors of those weights, and the quantum
/// exchange relation holds among minors.
inline BZOracleReport bz_minor_oracle(const std::shared_ptr<const RootData>& rd, const SignedWord& sw, bool commutations = true,
                                      bool words = true) {
  BZSeed bz = build_bz_seed(*rd, sw);
  const Seed& s = bz.seed;
  MinorTable tab{rd, {}};
  std::vector<MatrixCoeff> D;
  for (std::size_t p = 0; p < s.size(); ++p) D.push_back(tab.minor(std::abs(bz.letter[p]), bz.labels[p].gamma, bz.labels[p].delta));
  BZOracleReport rep;
  if (commutations) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) pairs.emplace_back(i, j);
    rep.commutations = parallel_map<CommutationCheck>(pairs.size(), [&](std::size_t t) {
      auto [i, j] = pairs[t];
      CoeffCombo lhs(product(D[i], D[j]));
      CoeffCombo rhs;
      rhs.add(RatFunc(Laurent::vpow(static_cast<int>(2 * s.Lambda[i][j]))), product(D[j], D[i]));
      return CommutationCheck{s.ids[i], s.ids[j], coeff_equal(lhs, rhs)};
    });
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.frozen[k]) continue;
    ExchangeCheck ec;
    ec.k = s.ids[k];
    auto [am, ap] = exchange_exponents(s, k);
    // fundamental index whose orbit contains w, or 0
    auto orbit_of = [&](const IntVec& w) {
      for (int i = 1; i <= rd->rank; ++i) {
        auto orb = rd->orbit(rd->fundamental_weight(i));
        if (std::find(orb.begin(), orb.end(), w) != orb.end()) return i;
      }
      return 0;
    };
    // weights of x_k' from the exchange monomial a- (homogeneity makes a+ give the same)
    IntVec g(rd->r(), 0), d(rd->r(), 0);
    for (std::size_t j = 0; j < s.size(); ++j)
      for (std::size_t t = 0; t < rd->r(); ++t) {
        g[t] += am[j] * bz.labels[j].gamma[t] - (j == k ? bz.labels[j].gamma[t] : 0);
        d[t] += am[j] * bz.labels[j].delta[t] - (j == k ? bz.labels[j].delta[t] : 0);
      }
    Exp fk = unit_exp(s.size(), k);
    CoeffCombo rhs;
    for (const Exp* a : {&am, &ap}) {
      Int tw = bilinear(s.Lambda, fk, *a);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) tw -= s.Lambda[i][j] * (*a)[i] * (*a)[j];
      rhs.add(RatFunc(Laurent::vpow(static_cast<int>(tw))), ordered_product(D, *a, rd));
    }
    CoeffCombo lhs;
    const int ig = orbit_of(g);
    if (ig != 0 && ig == orbit_of(d)) {
      lhs = CoeffCombo(product(D[k], tab.minor(ig, g, d)));
      ec.new_label = make_label(g, d).display;
      ec.expressed = true;
    } else {
      // x_k' as a combination of products of two minors with the same weights
      std::vector<MatrixCoeff> cands, unknown;
      for (int i1 = 1; i1 <= rd->rank; ++i1)
        for (int i2 = 1; i2 <= rd->rank; ++i2)
          for (const auto& g1 : rd->orbit(rd->fundamental_weight(i1)))
            for (const auto& d1 : rd->orbit(rd->fundamental_weight(i1))) {
              IntVec g2 = g, d2 = d;
              for (std::size_t t = 0; t < rd->r(); ++t) {
                g2[t] -= g1[t];
                d2[t] -= d1[t];
              }
              auto orb2 = rd->orbit(rd->fundamental_weight(i2));
              if (std::find(orb2.begin(), orb2.end(), g2) == orb2.end() || std::find(orb2.begin(), orb2.end(), d2) == orb2.end())
                continue;
              cands.push_back(product(tab.minor(i1, g1, d1), tab.minor(i2, g2, d2)));
              unknown.push_back(product(D[k], cands.back()));
            }
      if (auto sol = solve_combination(unknown, rhs)) {
        std::string expr;
        for (std::size_t t = 0; t < cands.size(); ++t) {
          if ((*sol)[t].is_zero()) continue;
          lhs.add((*sol)[t], unknown[t]);
          expr += (expr.empty() ? "" : " + ") + std::string("(") + (*sol)[t].str() + ")*" + cands[t].label;
        }
        ec.new_label = expr;
        ec.expressed = !lhs.terms.empty();
      }
    }
    if (ec.expressed) {
      ec.span_equal = coeff_equal(lhs, rhs);
      ec.word_bound = 0;
      for (const auto& [c, m] : lhs.terms) ec.word_bound = std::max(ec.word_bound, m.mod->span_height);
      for (const auto& [c, m] : rhs.terms) ec.word_bound = std::max(ec.word_bound, m.mod->span_height);
      ec.words_equal = !words || coeff_equal_words(lhs, rhs, ec.word_bound);
    }
    rep.exchanges.push_back(ec);
  }
  return rep;
}

/// Delta_{w lambda, u lambda} Delta_{w mu, u mu} = Delta_{w(lambda+mu), u(lambda+mu)} for all w, u in W.
/// A1: lambda = mu = varpi with V(2 varpi) built directly. A2: lambda = varpi_1, mu = varpi_2 with
/// V(theta) the adjoint module.
struct DeDeCheck {
  std::string w, u;
  bool span_equal = false;
  bool words_equal = false;
  int word_bound = 0;
  bool ok() const { return span_equal && words_equal; }
};

inline std::string weyl_word_str(const WeylWord& w) {
  if (w.empty()) return "e";
  std::string s;
  for (int x : w) s += (s.empty() ? "s" : " s") + std::to_string(x);
  return s;
}

/// One reduced word per element of W, found through the orbit of rho.
inline std::vector<WeylWord> weyl_elements(const RootData& rd) {
  std::vector<WeylWord> out;
  for (const auto& mu : rd.orbit(rd.rho())) out.push_back(*rd.word_to_weight(rd.rho(), mu));
  return out;
}

inline std::vector<DeDeCheck> dede(const std::string& type, bool words = true) {
  auto rd = std::make_shared<const RootData>(make_root_data(type));
  ModulePtr A, B, C;
  if (type == "A1") {
    A = B = std::make_shared<const Module>(sl2_module(rd, 1));
    C = std::make_shared<const Module>(sl2_module(rd, 2));
  } else if (type == "A2") {
    A = std::make_shared<const Module>(minuscule_module(rd, 1));
    B = std::make_shared<const Module>(minuscule_module(rd, 2));
    C = std::make_shared<const Module>(adjoint_module(rd));
  } else {
    throw Error(Errc::Parse, "dede is available for A1 and A2");
  }
  auto W = weyl_elements(*rd);
  std::vector<std::pair<WeylWord, WeylWord>> jobs;
  for (const auto& w : W)
    for (const auto& u : W) jobs.emplace_back(w, u);
  return parallel_map<DeDeCheck>(jobs.size(), [&](std::size_t t) {
    const auto& [w, u] = jobs[t];
    CoeffCombo lhs(product(minor(A, w, u), minor(B, w, u))), rhs(minor(C, w, u));
    DeDeCheck c;
    c.w = weyl_word_str(w);
    c.u = weyl_word_str(u);
    c.word_bound = std::max(word_bound(lhs), word_bound(rhs));
    c.span_equal = coeff_equal(lhs, rhs);
    c.words_equal = !words || coeff_equal_words(lhs, rhs, c.word_bound);
    return c;
  });
}

}  // namespace qcf
