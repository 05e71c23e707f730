#include "qcf/commands.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcf/bzseed.hpp"
#include "qcf/chevalley.hpp"
#include "qcf/cluster.hpp"
#include "qcf/io.hpp"
#include "qcf/lie.hpp"
#include "qcf/oracle.hpp"
#include "qcf/qgroup.hpp"
#include "qcf/util.hpp"

namespace qcf {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string t;
  while (std::getline(ss, t, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (...) {
      throw Error(Errc::Parse, "bad integer '" + t + "' in list");
    }
  }
  return out;
}

namespace {

WeylWord parse_weyl(const std::string& s) {
  WeylWord w;
  if (s == "e") return w;
  for (char c : s) {
    if (c == ',' || c == ' ') continue;
    if (c < '1' || c > '9') throw Error(Errc::Parse, "bad Weyl word '" + s + "'");
    w.push_back(c - '0');
  }
  return w;
}

json path_json(const std::vector<int>& p) {
  json a = json::array();
  for (int x : p) a.push_back(x);
  return a;
}

// ---------------------------------------------------------------------------
// Seed sources

Seed load_seed(const SeedSource& o) {
  if (!o.file.empty()) {
    if (!o.type.empty()) throw Error(Errc::Parse, "give either --seed or --type");
    Seed s = seed_from_json(read_json_file(o.file));
    if (o.classical)
      for (auto& r : s.Lambda) std::fill(r.begin(), r.end(), 0);
    return s;
  }
  if (o.type.empty()) throw Error(Errc::Parse, "a seed is required: --seed FILE or --type T");
  RootData rd = make_root_data(o.type);
  if (!o.word.empty()) {
    SignedWord sw = parse_signed_word(o.word);
    return (o.classical ? build_bfz_seed(rd, sw) : build_bz_seed(rd, sw)).seed;
  }
  return principal_seed(exchange_from_cartan(rd.cartan), rd.d, !o.classical);
}

// ---------------------------------------------------------------------------
// seed

Outcome do_seed_check(const Seed& s, const AnyRing& ring) {
  Outcome out;
  auto compat = check_compatible(s);
  auto skew = skew_symmetrizability_violation(s);
  json dp = json::array();
  for (std::size_t c = 0; c < s.nuf(); ++c) dp.push_back(json{{"id", s.ids[s.uf[c]]}, {"dprime", compat.dprime[c]}});
  json iso = json::array();
  for (int v : isolated_vertices(s)) iso.push_back(v);
  bool two_zd = std::visit([](const auto& r) { return r.two_is_zero_divisor(); }, ring);
  std::string rname = std::visit([](const auto& r) { return r.name(); }, ring);
  bool assumption = !(two_zd && !isolated_vertices(s).empty());
  out.report = json{{"seed", seed_json(s)},
                    {"skew_symmetrizable", !skew.has_value()},
                    {"quantum", s.is_quantum()},
                    {"compatible", compat.ok},
                    {"dprime", dp},
                    {"full_rank", full_rank(s)},
                    {"isolated_vertices", iso},
                    {"ring", rname},
                    {"assumption_holds", assumption}};
  if (skew) out.report["skew_violation"] = json::array({skew->first, skew->second});
  if (!compat.ok) out.report["compat_violation"] = json::array({compat.bad_i, compat.bad_k});
  // compatibility only constrains quantum seeds; Lambda = 0 is the classical case
  out.pass = (compat.ok || !s.is_quantum()) && !skew && assumption;
  out.summary = std::string("seed check: ") + (!s.is_quantum() ? "classical" : compat.ok ? "compatible" : "NOT compatible") + ", " +
                (skew ? "not skew-symmetrizable" : "skew-symmetrizable") + (assumption ? "" : ", assumption fails for " + rname);
  return out;
}

Outcome do_seed_mutate(const Seed& s, const std::vector<int>& seq) {
  if (seq.empty()) throw Error(Errc::Parse, "give -k or --seq");
  Outcome out;
  Seed t = mutate_matrices(s, seq);
  auto c0 = check_compatible(s), c1 = check_compatible(t);
  out.report = json{{"path", path_json(seq)}, {"seed", seed_json(t)}, {"compatible", c1.ok}};
  out.pass = !c0.ok || (c1.ok && c0.dprime == c1.dprime);
  out.report["dprime_preserved"] = c0.dprime == c1.dprime;
  out.summary = "mutated along " + path_json(seq).dump();
  return out;
}

// ---------------------------------------------------------------------------
// var, check, trop, graph

template <class R>
json variable_json(const TwistedLaurent<R>& z, const Seed& ref, int id) {
  json j{{"id", id}, {"expansion", poly_json(z)}, {"text", z.str()}, {"terms", z.size()}};
  try {
    Dominance dom(ref.B);
    auto gf = extract_gf(z, ref, dom);
    j["pointed"] = true;
    j["g"] = exp_json(gf.g);
    j["F"] = gf_json(gf, z.ring())["F"];
  } catch (const Error& e) {
    j["pointed"] = false;
    j["reason"] = e.what();
  }
  return j;
}

template <class R>
Outcome do_var_expand(const Seed& s, const R& ring, const std::vector<int>& seq, std::optional<int> index) {
  Outcome out;
  auto st = mutate_variables(initial_state(s, ring), seq);
  json vars = json::array();
  for (std::size_t p = 0; p < s.size(); ++p) {
    if (index ? s.ids[p] != *index : s.frozen[p]) continue;
    vars.push_back(variable_json(st.vars[p], s, s.ids[p]));
  }
  if (index && vars.empty()) throw Error(Errc::BadVertex, "no vertex " + std::to_string(*index));
  out.report = json{{"ring", ring.name()}, {"path", path_json(seq)}, {"seed", seed_json(st.cur)}, {"variables", vars}};
  out.summary = "expanded " + std::to_string(vars.size()) + " variable(s) after " + std::to_string(seq.size()) + " mutation(s)";
  return out;
}

template <class R>
Outcome do_check_exchange(const Seed& s, const R& ring, const std::vector<int>& seq) {
  Outcome out;
  auto st = initial_state(s, ring);
  json steps = json::array();
  std::size_t fails = 0;
  for (int k : seq) {
    auto mu = mutate_variables(st, k);
    bool ok = exchange_relation_holds(st, mu, k);
    fails += ok ? 0 : 1;
    steps.push_back(json{{"k", k}, {"holds", ok}});
    st = std::move(mu);
  }
  out.pass = fails == 0;
  out.report = json{{"ring", ring.name()}, {"steps", steps}, {"failures", fails}};
  out.summary = "exchange relation: " + std::to_string(seq.size() - fails) + "/" + std::to_string(seq.size()) + " steps hold";
  return out;
}

template <class R>
TwistedLaurent<R> load_target(const Seed& s, const R& ring, const Target& t) {
  auto st = initial_state(s, ring);
  if (!t.poly_file.empty()) return poly_from_json(read_json_file(t.poly_file), st.torus);
  if (t.inverse_of) {
    Exp m(s.size(), 0);
    m[s.pos(*t.inverse_of)] = -1;
    return TwistedLaurent<R>::monomial(st.torus, m);
  }
  if (!t.index) throw Error(Errc::Parse, "give --poly, --index (with --seq) or --inverse");
  auto mu = mutate_variables(st, t.seq);
  return mu.vars[s.pos(*t.index)];
}

template <class R>
Outcome do_check_upper(const Seed& s, const R& ring, const Target& t, int depth, bool compactified) {
  Outcome out;
  auto z = load_target(s, ring, t);
  auto rep = upper_membership_bounded(z, s, depth, compactified);
  out.pass = rep.pass;
  out.report = json{{"ring", ring.name()},   {"element", z.str()},        {"depth", depth},
                    {"compactified", compactified}, {"seeds_checked", rep.seeds_checked}, {"pass", rep.pass},
                    {"bounded", true}};
  if (!rep.pass) {
    out.report["witness"] = path_json(rep.witness);
    out.report["reason"] = rep.reason;
    if (rep.nu_fail) out.report["nu"] = json{{"vertex", rep.nu_vertex}, {"value", *rep.nu_fail}};
  }
  out.summary = std::string("upper membership (bounded, depth ") + std::to_string(depth) + "): " + (rep.pass ? "pass" : "FAIL") +
                " over " + std::to_string(rep.seeds_checked) + " seeds";
  return out;
}

template <class R>
Outcome do_check_semival(const Seed& s, const R& ring, const Target& t) {
  Outcome out;
  auto z = load_target(s, ring, t);
  json rows = json::array();
  std::size_t fails = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (!s.frozen[j]) continue;
    auto nu0 = vanishing_order(z, j);
    for (std::size_t k : s.uf) {
      auto e = expand_in(z, s, {s.ids[k]});
      json row{{"j", s.ids[j]}, {"k", s.ids[k]}};
      if (!e) {
        row["laurent"] = false;
        ++fails;
      } else {
        auto nu1 = vanishing_order(*e, j);
        bool same = nu0 == nu1;
        row["nu_s"] = nu0 ? json(*nu0) : json(nullptr);
        row["nu_mu"] = nu1 ? json(*nu1) : json(nullptr);
        row["equal"] = same;
        fails += same ? 0 : 1;
      }
      rows.push_back(row);
    }
  }
  out.pass = fails == 0;
  out.report = json{{"ring", ring.name()}, {"element", z.str()}, {"checks", rows}, {"failures", fails}};
  out.summary = "nu_j under one mutation: " + std::to_string(rows.size() - fails) + "/" + std::to_string(rows.size()) + " agree";
  return out;
}

Outcome do_trop_apply(const Seed& s, const std::vector<int>& vec, const std::vector<int>& seq) {
  Outcome out;
  if (vec.size() != s.size()) throw Error(Errc::Parse, "vector length must equal the number of vertices");
  Exp m(vec.begin(), vec.end());
  json steps = json::array();
  Seed cur = s;
  for (int k : seq) {
    m = tropical_transform(m, cur, k);
    cur = mutate_matrices(cur, k);
    steps.push_back(json{{"k", k}, {"value", exp_json(m)}});
  }
  out.report = json{{"input", exp_json(Exp(vec.begin(), vec.end()))}, {"path", path_json(seq)}, {"steps", steps}, {"result", exp_json(m)}};
  out.summary = "tropical image " + exp_json(m).dump();
  return out;
}

template <class R>
Outcome do_graph_explore(const Seed& s, const R& ring, int max_depth) {
  Outcome out;
  auto g = explore(s, ring, max_depth);
  json vars = json::array();
  for (const auto& v : g.variables) vars.push_back(v.str());
  json edges = json::array();
  for (const auto& [a, k, b] : g.edges) edges.push_back(json::array({a, k, b}));
  json nodes = json::array();
  for (const auto& n : g.nodes) nodes.push_back(json{{"path", path_json(n.path)}});
  const std::size_t total = g.variables.size();
  out.report = json{{"ring", ring.name()},
                    {"max_depth", max_depth},
                    {"closed", g.closed},
                    {"seeds", g.nodes.size()},
                    {"cluster_variables", total},
                    {"initial_variables", g.initial_count},
                    {"non_initial_variables", total - g.initial_count},
                    {"variables", vars},
                    {"nodes", nodes},
                    {"edges", edges}};
  out.pass = g.closed;
  out.summary = "exchange graph: " + std::to_string(g.nodes.size()) + " seeds, " + std::to_string(total) + " unfrozen variables, " +
                (g.closed ? "closed" : "truncated at depth " + std::to_string(max_depth));
  return out;
}

// ---------------------------------------------------------------------------
// lie, bz

Outcome do_lie_roots(const std::string& type) {
  RootData rd = make_root_data(type);
  Outcome out;
  out.report = root_data_json(rd);
  out.summary = rd.name() + ": " + std::to_string(2 * rd.num_positive_roots()) + " roots";
  return out;
}

Outcome do_lie_w0(const std::string& type) {
  RootData rd = make_root_data(type);
  Outcome out;
  WeylWord w = rd.longest_word();
  json action = json::array();
  for (int i = 1; i <= rd.rank; ++i) action.push_back(int_vec_json(rd.apply_weight(w, rd.fundamental_weight(i))));
  out.report = json{{"type", rd.name()}, {"word", path_json(w)}, {"length", w.size()}, {"reduced", rd.is_reduced(w)}, {"w0_fundamental", action}};
  out.pass = rd.is_reduced(w) && w.size() == rd.num_positive_roots();
  out.summary = rd.name() + ": w0 = " + path_json(w).dump();
  return out;
}

Outcome do_bz_build(const std::string& type, const std::string& word, bool classical) {
  RootData rd = make_root_data(type);
  SignedWord sw = parse_signed_word(word);
  BZSeed bz = classical ? build_bfz_seed(rd, sw) : build_bz_seed(rd, sw);
  Outcome out;
  out.report = bz_json(bz);
  out.report["type"] = rd.name();
  out.summary = "BZ seed for " + rd.name() + " with " + std::to_string(bz.seed.size()) + " vertices";
  return out;
}

Outcome do_bz_bullet(const std::string& type, const std::string& w0, bool classical) {
  RootData rd = make_root_data(type);
  WeylWord w = w0.empty() ? rd.longest_word() : WeylWord(parse_int_list(w0).begin(), parse_int_list(w0).end());
  SignedWord sw = bullet_word(rd, w);
  BZSeed bz = classical ? build_bfz_seed(rd, sw) : build_bz_seed(rd, sw);
  Outcome out;
  out.report = bz_json(bz);
  out.report["type"] = rd.name();
  out.report["w0"] = path_json(w);
  out.summary = "bullet seed for " + rd.name() + ", " + std::to_string(bz.seed.size()) + " vertices";
  return out;
}

// ---------------------------------------------------------------------------
// oracle

json items_json(const std::vector<CheckItem>& items) {
  json a = json::array();
  for (const auto& c : items) {
    json j{{"identity", c.name}, {"pass", c.ok}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    a.push_back(j);
  }
  return a;
}

Outcome do_oracle_g2(const std::string& ring) {
  if (ring != "ZvLoc" && ring != "Frac") throw Error(Errc::Parse, "g2-verify needs (q^2+1) invertible: use --ring ZvLoc or Frac");
  Outcome out;
  auto rep = verify_g2_identities();
  out.pass = rep.ok();
  out.report = json{{"ring", ring}, {"word_bound", rep.word_bound}, {"checks", items_json(rep.items)}, {"pass", out.pass}};
  std::size_t good = 0;
  for (const auto& i : rep.items) good += i.ok ? 1 : 0;
  out.summary = "G2 identities: " + std::to_string(good) + "/" + std::to_string(rep.items.size()) + " pass";
  return out;
}

Outcome do_oracle_adjoint(const std::string& type, bool relations) {
  auto rd = std::make_shared<const RootData>(make_root_data(type));
  Module m = adjoint_module(rd);
  Outcome out;
  std::vector<CheckItem> items;
  const std::size_t expect_dim = 2 * rd->num_positive_roots() + rd->r();
  items.push_back({"dimension = |roots| + rank", m.dim() == expect_dim, std::to_string(m.dim())});
  std::size_t zero = m.weight_space(rd->zero()).size();
  items.push_back({"zero weight multiplicity = rank", zero == rd->r(), std::to_string(zero)});
  if (relations) {
    auto r = check_relations(m);
    items.push_back({"relations on V(theta)", r.ok, r.ok ? std::to_string(r.checks) + " checks" : r.failures.front()});
    Module dm = dual(m);
    auto rd2 = check_relations(dm);
    items.push_back({"relations on V(theta)*", rd2.ok, rd2.ok ? "" : rd2.failures.front()});
  }
  // action on dual basis vectors of t_j and X_{alpha_j}
  Module dm = dual(m);
  bool ex_ok = true;
  for (int i = 1; i <= rd->rank; ++i)
    for (int j = 1; j <= rd->rank; ++j) {
      std::size_t tj = *m.index_of("t" + std::to_string(j));
      IntVec aj(rd->r(), 0), mai(rd->r(), 0);
      aj[j - 1] = 1;
      mai[i - 1] = -1;
      std::size_t xaj = *m.index_of("X" + weight_str(aj));
      std::size_t xmai = *m.index_of("X" + weight_str(mai));
      SpVec expect1;
      if (i == j) expect1[xmai] = RatFunc(-1);
      if (dm.applyE(i, unit_vec(tj)) != expect1) ex_ok = false;
      SpVec expect2;
      if (i == j)
        for (int k = 1; k <= rd->rank; ++k) {
          Int c = rd->cartan[k - 1][j - 1];
          if (c == 0) continue;
          expect2[*m.index_of("t" + std::to_string(k))] =
              -(RatFunc(qpow(-2 * rd->d[j - 1])) * qn(c < 0 ? -c : c, rd->d[k - 1]));
        }
      if (dm.applyE(i, unit_vec(xaj)) != expect2) ex_ok = false;
    }
  items.push_back({"X_i^+ on t_j* and X_{alpha_j}* in the dual", ex_ok, ""});
  out.pass = true;
  for (const auto& c : items) out.pass = out.pass && c.ok;
  json basis = json::array();
  for (std::size_t k = 0; k < m.dim(); ++k) basis.push_back(json{{"name", m.names[k]}, {"weight", int_vec_json(m.wt[k])}});
  out.report = json{{"type", rd->name()}, {"dimension", m.dim()}, {"checks", items_json(items)}, {"basis", basis}, {"pass", out.pass}};
  out.summary = "adjoint module of " + rd->name() + " (dim " + std::to_string(m.dim()) + "): " + (out.pass ? "pass" : "FAIL");
  return out;
}

/// term := [ "(" ring element ")" ] factor { "*" factor };  factor := "1" | "D" i "[" w ";" u "]"
CoeffCombo parse_minor_combo(const std::string& text, MinorTable& tab) {
  CoeffCombo out;
  std::size_t p = 0;
  auto skip = [&] {
    while (p < text.size() && text[p] == ' ') ++p;
  };
  auto parse_factor = [&]() -> MatrixCoeff {
    skip();
    if (p < text.size() && text[p] == '1') {
      ++p;
      return unit_coeff(tab.rd);
    }
    if (p >= text.size() || text[p] != 'D') throw Error(Errc::Parse, "expected a minor D<i>[w;u] at offset " + std::to_string(p));
    ++p;
    std::size_t q = p;
    while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
    if (q == p || q >= text.size() || text[q] != '[') throw Error(Errc::Parse, "expected D<i>[w;u]");
    int i = std::stoi(text.substr(p, q - p));
    if (i < 1 || i > tab.rd->rank) throw Error(Errc::Parse, "fundamental index out of range");
    std::size_t close = text.find(']', q);
    if (close == std::string::npos) throw Error(Errc::Parse, "missing ]");
    std::string inner = text.substr(q + 1, close - q - 1);
    std::size_t semi = inner.find(';');
    if (semi == std::string::npos) throw Error(Errc::Parse, "expected ; in D<i>[w;u]");
    p = close + 1;
    return minor(tab.module(i), parse_weyl(inner.substr(0, semi)), parse_weyl(inner.substr(semi + 1)));
  };
  while (true) {
    skip();
    RatFunc c(1);
    if (p < text.size() && (text[p] == '(' || text[p] == '-')) {
      bool neg = false;
      if (text[p] == '-') {
        neg = true;
        ++p;
        skip();
      }
      if (p < text.size() && text[p] == '(') {
        std::size_t close = text.find(')', p);
        if (close == std::string::npos) throw Error(Errc::Parse, "missing )");
        c = RatFunc::parse(text.substr(p + 1, close - p - 1));
        p = close + 1;
      }
      if (neg) c = -c;
    }
    MatrixCoeff m = parse_factor();
    skip();
    while (p < text.size() && text[p] == '*') {
      ++p;
      m = product(m, parse_factor());
      skip();
    }
    out.add(c, m);
    skip();
    if (p >= text.size()) break;
    if (text[p] != '+') throw Error(Errc::Parse, "expected + at offset " + std::to_string(p));
    ++p;
  }
  return out;
}

Outcome do_oracle_minor_eq(const std::string& type, const std::string& lhs, const std::string& rhs, const std::string& word) {
  auto rd = std::make_shared<const RootData>(make_root_data(type));
  Outcome out;
  if (!word.empty()) {
    auto rep = bz_minor_oracle(rd, parse_signed_word(word));
    json comm = json::array(), ex = json::array();
    for (const auto& c : rep.commutations) comm.push_back(json{{"i", c.i}, {"j", c.j}, {"pass", c.ok}});
    for (const auto& e : rep.exchanges)
      ex.push_back(json{{"k", e.k}, {"mutated", e.new_label}, {"expressed", e.expressed}, {"span_equal", e.span_equal},
                        {"words_equal", e.words_equal}, {"word_bound", e.word_bound}, {"pass", e.ok()}});
    out.pass = rep.ok();
    out.report = json{{"type", rd->name()}, {"word", word}, {"commutations", comm}, {"exchanges", ex}, {"pass", out.pass}};
    out.summary = "BZ seed vs quantum minors (" + rd->name() + "): " + (out.pass ? "pass" : "FAIL");
    return out;
  }
  if (lhs.empty() || rhs.empty()) throw Error(Errc::Parse, "give --lhs and --rhs, or --word");
  MinorTable tab{rd, {}};
  CoeffCombo a = parse_minor_combo(lhs, tab), b = parse_minor_combo(rhs, tab);
  SpanStats st;
  bool span = coeff_equal(a, b, &st);
  int bound = std::max(word_bound(a), word_bound(b));
  GenWord wit;
  bool words = coeff_equal_words(a, b, bound, &wit);
  out.pass = span && words;
  out.report = json{{"type", rd->name()}, {"lhs", lhs},          {"rhs", rhs},    {"equal", out.pass},
                    {"span_equal", span},  {"words_equal", words}, {"word_bound", bound}};
  if (span) out.report["span_dimension"] = st.dimension;
  if (!words) out.report["witness_word"] = word_str(wit);
  out.summary = std::string("minor identity: ") + (out.pass ? "holds" : "FAILS");
  return out;
}

Outcome do_oracle_dede(const std::string& type) {
  Outcome out;
  auto rows = dede(type);
  json a = json::array();
  std::size_t good = 0;
  int bound = 0;
  for (const auto& r : rows) {
    a.push_back(json{{"w", r.w}, {"u", r.u}, {"span_equal", r.span_equal}, {"words_equal", r.words_equal}, {"pass", r.ok()}});
    good += r.ok() ? 1 : 0;
    bound = std::max(bound, r.word_bound);
  }
  out.pass = good == rows.size();
  out.report = json{{"type", type}, {"word_bound", bound}, {"checks", a}, {"pass", out.pass}};
  out.summary = "DeDe for " + type + ": " + std::to_string(good) + "/" + std::to_string(rows.size()) + " pass";
  return out;
}

Outcome do_oracle_chevalley(const std::string& type, std::size_t samples, unsigned seed) {
  RootData rd = make_root_data(type);
  auto rep = chevalley_checks(rd, samples, seed);
  Outcome out;
  json wit = json::array();
  for (const auto& w : rep.root_witnesses)
    wit.push_back(json{{"beta", int_vec_json(w.beta)}, {"found", w.found}, {"i", w.i}, {"eps", w.eps}, {"eps_prime", w.eps_prime}});
  json cw = json::array();
  for (const auto& [i, s] : rep.cartan_witnesses) cw.push_back(json{{"i", i}, {"sign", s}, {"found", s != 0}});
  out.pass = rep.ok();
  out.report = json{{"type", rd.name()},
                    {"root_witnesses", wit},
                    {"cartan_witnesses", cw},
                    {"hh_component_zero", rep.hh_zero},
                    {"jacobi_exhaustive", rep.jacobi_exhaustive},
                    {"jacobi_failures", rep.jacobi_failures},
                    {"jacobi_sampled", rep.jacobi_sampled},
                    {"jacobi_sampled_failures", rep.jacobi_sampled_failures},
                    {"pass", out.pass}};
  out.summary = "Chevalley checks for " + rd.name() + ": " + (out.pass ? "pass" : "FAIL");
  return out;
}

Outcome do_oracle_psi(const std::string& type, const std::string& beta) {
  RootData rd = make_root_data(type);
  std::vector<IntVec> betas;
  if (!beta.empty()) {
    auto b = parse_int_list(beta);
    betas.push_back(IntVec(b.begin(), b.end()));
  } else {
    for (const auto& b : rd.all_roots())
      if (b != rd.highest_root() && !(RootData::height(b) == -RootData::height(rd.highest_root()))) betas.push_back(b);
  }
  Outcome out;
  json rows = json::array();
  for (const auto& b : betas) {
    auto r = psi_decompose(rd, b);
    auto c = psi_verify(rd, b, r);
    rows.push_back(json{{"beta", int_vec_json(b)},
                        {"beta1", int_vec_json(r.beta1)},
                        {"beta2", int_vec_json(r.beta2)},
                        {"psi_size", c.psi_size},
                        {"maximal", c.maximal},
                        {"nonzero", c.nonzero}});
    out.pass = out.pass && c.maximal && c.nonzero;
  }
  out.report = json{{"type", rd.name()}, {"decompositions", rows}, {"pass", out.pass}};
  out.summary = "psi decompositions for " + rd.name() + ": " + std::to_string(rows.size()) + " roots, " + (out.pass ? "pass" : "FAIL");
  return out;
}

bool input_error(Errc c) {
  switch (c) {
    case Errc::Parse:
    case Errc::BadVertex:
    case Errc::NotReduced:
    case Errc::NotARoot:
    case Errc::OutOfDomain:
    case Errc::NotMinuscule:
    case Errc::NotFrozen:
    case Errc::RankError:
    case Errc::Incompatible:
    case Errc::AssumptionViolated:
      return true;
    default:
      return false;
  }
}

template <class F>
Outcome with_ring(const std::string& name, F f) {
  return std::visit([&](const auto& r) { return f(r); }, parse_ring(name));
}

}  // namespace

Outcome seed_check(const SeedSource& src, const std::string& ring) { return do_seed_check(load_seed(src), parse_ring(ring)); }

Outcome seed_mutate(const SeedSource& src, const std::vector<int>& seq) { return do_seed_mutate(load_seed(src), seq); }

Outcome var_expand(const SeedSource& src, const std::string& ring, const std::vector<int>& seq, std::optional<int> index) {
  Seed s = load_seed(src);
  return with_ring(ring, [&](const auto& r) { return do_var_expand(s, r, seq, index); });
}

Outcome check_exchange(const SeedSource& src, const std::string& ring, const std::vector<int>& seq) {
  Seed s = load_seed(src);
  return with_ring(ring, [&](const auto& r) { return do_check_exchange(s, r, seq); });
}

Outcome check_upper(const SeedSource& src, const std::string& ring, const Target& t, int depth, bool compactified) {
  Seed s = load_seed(src);
  return with_ring(ring, [&](const auto& r) { return do_check_upper(s, r, t, depth, compactified); });
}

Outcome check_semival(const SeedSource& src, const std::string& ring, const Target& t) {
  Seed s = load_seed(src);
  return with_ring(ring, [&](const auto& r) { return do_check_semival(s, r, t); });
}

Outcome trop_apply(const SeedSource& src, const std::vector<int>& vec, const std::vector<int>& seq) {
  return do_trop_apply(load_seed(src), vec, seq);
}

Outcome graph_explore(const SeedSource& src, const std::string& ring, int max_depth) {
  Seed s = load_seed(src);
  return with_ring(ring, [&](const auto& r) { return do_graph_explore(s, r, max_depth); });
}

Outcome lie_roots(const std::string& type) { return do_lie_roots(type); }
Outcome lie_w0(const std::string& type) { return do_lie_w0(type); }
Outcome bz_build(const std::string& type, const std::string& word, bool classical) { return do_bz_build(type, word, classical); }
Outcome bz_bullet(const std::string& type, const std::string& w0, bool classical) { return do_bz_bullet(type, w0, classical); }
Outcome oracle_g2(const std::string& ring) { return do_oracle_g2(ring); }
Outcome oracle_adjoint(const std::string& type, bool relations) { return do_oracle_adjoint(type, relations); }
Outcome oracle_minor_eq(const std::string& type, const std::string& lhs, const std::string& rhs, const std::string& word) {
  return do_oracle_minor_eq(type, lhs, rhs, word);
}
Outcome oracle_dede(const std::string& type) { return do_oracle_dede(type); }
Outcome oracle_chevalley(const std::string& type, std::size_t samples, unsigned seed) {
  return do_oracle_chevalley(type, samples, seed);
}
Outcome oracle_psi(const std::string& type, const std::string& beta) { return do_oracle_psi(type, beta); }

int run_command(const std::function<Outcome()>& f, const std::string& out_path) {
  auto emit = [&](const json& j) {
    if (out_path.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::ofstream o(out_path);
      o << j.dump(2) << "\n";
    }
  };
  try {
    Outcome o = f();
    o.report["status"] = o.pass ? "pass" : "fail";
    emit(o.report);
    std::cerr << o.summary << "\n";
    return o.pass ? 0 : 1;
  } catch (const Error& e) {
    emit(json{{"status", "error"}, {"error", e.what()}});
    std::cerr << "error: " << e.what() << "\n";
    return input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    emit(json{{"status", "error"}, {"error", e.what()}});
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qcf
