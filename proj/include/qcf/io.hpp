/**
 * @file io.hpp
 * @brief JSON forms of seeds, quantum torus elements and root data, and the
 * coefficient-ring choice used by the command-line tool.
 */
#pragma once

#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "qcf/bzseed.hpp"
#include "qcf/cluster.hpp"
#include "qcf/lie.hpp"
#include "qcf/seed.hpp"

namespace qcf {

using json = nlohmann::json;

inline json int_vec_json(const IntVec& v) {
  json a = json::array();
  for (Int x : v) a.push_back(x);
  return a;
}

inline json exp_json(const Exp& v) {
  json a = json::array();
  for (int x : v) a.push_back(x);
  return a;
}

inline json int_mat_json(const IntMat& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(int_vec_json(r));
  return a;
}

inline json seed_json(const Seed& s) {
  json v = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json e{{"id", s.ids[i]}, {"frozen", static_cast<bool>(s.frozen[i])}, {"d", s.d[i]}};
    if (!s.labels[i].empty()) e["label"] = s.labels[i];
    v.push_back(e);
  }
  return json{{"vertices", v}, {"B", int_mat_json(s.B)}, {"Lambda", int_mat_json(s.Lambda)}};
}

/// Reads a seed; B may have one column per unfrozen vertex or one per vertex
/// (then the unfrozen columns are used). Vertices are reordered by label.
inline Seed seed_from_json(const json& j) {
  try {
    const auto& vs = j.at("vertices");
    const std::size_t n = vs.size();
    std::vector<int> ids(n), d(n);
    std::vector<bool> fr(n);
    std::vector<std::string> lab(n);
    for (std::size_t i = 0; i < n; ++i) {
      ids[i] = vs[i].at("id").get<int>();
      fr[i] = vs[i].value("frozen", false);
      d[i] = vs[i].value("d", 1);
      lab[i] = vs[i].value("label", std::string());
    }
    auto read_mat = [](const json& m) {
      IntMat out;
      for (const auto& r : m) {
        IntVec row;
        for (const auto& x : r) row.push_back(x.get<Int>());
        out.push_back(row);
      }
      return out;
    };
    IntMat B = read_mat(j.at("B"));
    IntMat L = j.contains("Lambda") ? read_mat(j.at("Lambda")) : IntMat(n, IntVec(n, 0));
    if (B.size() != n || L.size() != n) throw Error(Errc::Parse, "matrix row count differs from the vertex count");
    std::size_t nuf = static_cast<std::size_t>(std::count(fr.begin(), fr.end(), false));
    for (const auto& r : B)
      if (r.size() != nuf && r.size() != n) throw Error(Errc::Parse, "B must have |I_uf| or |I| columns");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    // columns of B listed in the input's vertex order (unfrozen only)
    std::vector<std::size_t> ufcols_in;  // input vertex index per input column
    for (std::size_t i = 0; i < n; ++i)
      if (!fr[i]) ufcols_in.push_back(i);
    std::vector<int> sids(n), sd(n);
    std::vector<bool> sfr(n);
    std::vector<std::string> slab(n);
    IntMat sB(n), sL(n, IntVec(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t i = order[a];
      sids[a] = ids[i];
      sfr[a] = fr[i];
      sd[a] = d[i];
      slab[a] = lab[i];
      for (std::size_t b = 0; b < n; ++b) sL[a][b] = L[i][order[b]];
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t k = order[b];
        if (fr[k]) continue;
        if (B[i].size() == n) {
          sB[a].push_back(B[i][k]);
        } else {
          std::size_t c = static_cast<std::size_t>(std::find(ufcols_in.begin(), ufcols_in.end(), k) - ufcols_in.begin());
          sB[a].push_back(B[i][c]);
        }
      }
    }
    return make_seed(sids, sfr, sd, sB, sL, slab);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, std::string("seed JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, path + ": " + e.what());
  }
}

template <class R>
json poly_json(const TwistedLaurent<R>& z) {
  json a = json::array();
  for (const auto& [m, c] : z.terms()) a.push_back(json{{"exponents", exp_json(m)}, {"coeff", z.ring().format(c)}});
  return a;
}

template <class R>
TwistedLaurent<R> poly_from_json(const json& j, const std::shared_ptr<const Torus<R>>& tor) {
  TwistedLaurent<R> z(tor);
  try {
    for (const auto& t : j) {
      Exp m;
      for (const auto& x : t.at("exponents")) m.push_back(x.get<int>());
      if (m.size() != tor->dim()) throw Error(Errc::Parse, "exponent length differs from the seed size");
      z.add_term(m, tor->ring.parse(t.at("coeff").get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, std::string("polynomial JSON: ") + e.what());
  }
  return z;
}

template <class R>
json gf_json(const GF<R>& gf, const R& ring) {
  json f = json::array();
  for (const auto& [n, c] : gf.f) f.push_back(json{{"n", int_vec_json(n)}, {"coeff", ring.format(c)}});
  return json{{"g", exp_json(gf.g)}, {"F", f}};
}

inline json bz_json(const BZSeed& bz) {
  json j = seed_json(bz.seed);
  json labels = json::array();
  for (std::size_t p = 0; p < bz.labels.size(); ++p)
    labels.push_back(json{{"id", bz.seed.ids[p]},
                          {"letter", bz.letter[p]},
                          {"gamma", int_vec_json(bz.labels[p].gamma)},
                          {"delta", int_vec_json(bz.labels[p].delta)},
                          {"minor", bz.labels[p].display}});
  j["minors"] = labels;
  json w = json::array();
  for (int x : bz.word.letters) w.push_back(x);
  j["word"] = w;
  auto compat = check_compatible(bz.seed);
  json dp = json::array();
  for (std::size_t c = 0; c < bz.seed.nuf(); ++c) dp.push_back(json{{"id", bz.seed.ids[bz.seed.uf[c]]}, {"dprime", compat.dprime[c]}});
  j["compatible"] = compat.ok;
  j["dprime"] = dp;
  return j;
}

// ---------------------------------------------------------------------------
// Ring choice

using AnyRing = std::variant<LaurentRing, LocRing, RatFuncRing, IntegerRing, DyadicRing, ZModRing>;

/// Zv | ZvLoc | Frac | Z | Z:-1 | ZHalf | ZHalf:<v image> | Zmod:<n>:<v image>
inline AnyRing parse_ring(const std::string& s) {
  auto parts = [&] {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ':')) out.push_back(t);
    return out;
  }();
  if (parts.empty()) throw Error(Errc::Parse, "empty ring name");
  const std::string& h = parts[0];
  try {
    if (h == "Zv" && parts.size() == 1) return LaurentRing{};
    if (h == "ZvLoc" && parts.size() == 1) return LocRing{};
    if (h == "Frac" && parts.size() == 1) return RatFuncRing{};
    if (h == "Z" && parts.size() <= 2) {
      IntegerRing r;
      if (parts.size() == 2) r.vsign = std::stoi(parts[1]);
      if (r.vsign != 1 && r.vsign != -1) throw Error(Errc::Parse, "v must map to 1 or -1 in Z");
      return r;
    }
    if (h == "ZHalf" && parts.size() <= 2) {
      DyadicRing r;
      if (parts.size() == 2) r.vimg = Dyadic::parse(parts[1]);
      return r;
    }
    if (h == "Zmod" && parts.size() == 3) return ZModRing(BigInt(parts[1]), BigInt(parts[2]));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::Parse, "bad ring '" + s + "'");
  }
  throw Error(Errc::Parse, "unknown ring '" + s + "'");
}

inline json root_data_json(const RootData& rd) {
  json pos = json::array();
  for (const auto& b : rd.positive_roots)
    pos.push_back(json{{"root", int_vec_json(b)}, {"weight", int_vec_json(rd.root_to_weight(b))}, {"height", RootData::height(b)}});
  json fund = json::array();
  for (int i = 1; i <= rd.rank; ++i) fund.push_back(int_vec_json(rd.fundamental_weight(i)));
  json d = json::array();
  for (int x : rd.d) d.push_back(x);
  return json{{"type", rd.name()},
              {"rank", rd.rank},
              {"cartan", int_mat_json(rd.cartan)},
              {"d", d},
              {"positive_roots", pos},
              {"num_roots", 2 * rd.num_positive_roots()},
              {"highest_root", int_vec_json(rd.highest_root())},
              {"fundamental_weights", fund}};
}

}  // namespace qcf
