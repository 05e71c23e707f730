/**
 * @file bzseed.hpp
 * @brief Berenstein-Zelevinsky quantum seeds (and the classical BFZ seeds) from
 * signed reduced words of double Bruhat cells, with generalized-minor labels.
 *
 * Negative letters belong to the first Weyl component u, positive letters to w.
 * Vertices are [-r,-1] followed by [1,l].
 */
#pragma once

#include <limits>
#include <string>
#include <vector>

#include "qcf/lie.hpp"
#include "qcf/seed.hpp"

namespace qcf {

struct SignedWord {
  std::vector<int> letters;  // i_1..i_l, nonzero, |i_k| in [1,r]
  std::vector<int> negperm;  // (i_{-r}, ..., i_{-1}), a permutation of [1,r]
};

struct MinorLabel {
  IntVec gamma;
  IntVec delta;
  std::string display;
};

inline MinorLabel make_label(IntVec g, IntVec d) {
  std::string disp = "Delta_{" + weight_str(g) + "," + weight_str(d) + "}";
  return MinorLabel{std::move(g), std::move(d), std::move(disp)};
}

struct BZSeed {
  Seed seed;
  SignedWord word;
  std::vector<MinorLabel> labels;  // by seed position
  std::vector<int> letter;         // i_k by seed position (frozen negatives from negperm)
};

/// Positive and negative subwords: (u word, w word).
inline std::pair<WeylWord, WeylWord> split_word(const SignedWord& sw) {
  WeylWord u, w;
  for (int x : sw.letters) (x < 0 ? u : w).push_back(x < 0 ? -x : x);
  return {u, w};
}

inline bool is_reduced_for(const RootData& rd, const SignedWord& sw) {
  for (int x : sw.letters)
    if (x == 0 || std::abs(x) > rd.rank) return false;
  auto [u, w] = split_word(sw);
  return rd.is_reduced(u) && rd.is_reduced(w);
}

/// (i_N, ..., i_1, -i_1, ..., -i_N) with negperm (r, ..., 1).
inline SignedWord bullet_word(const RootData& rd, const WeylWord& w0word) {
  if (!rd.is_reduced(w0word) || w0word.size() != rd.num_positive_roots())
    throw Error(Errc::NotReduced, "not a reduced word for w0");
  SignedWord sw;
  for (auto it = w0word.rbegin(); it != w0word.rend(); ++it) sw.letters.push_back(*it);
  for (int i : w0word) sw.letters.push_back(-i);
  for (int i = rd.rank; i >= 1; --i) sw.negperm.push_back(i);
  return sw;
}

inline BZSeed build_bz_seed(const RootData& rd, SignedWord sw) {
  const int r = rd.rank;
  if (sw.negperm.empty())
    for (int i = r; i >= 1; --i) sw.negperm.push_back(i);
  {
    std::vector<int> p = sw.negperm;
    std::sort(p.begin(), p.end());
    for (int i = 0; i < r; ++i)
      if (static_cast<int>(p.size()) != r || p[i] != i + 1) throw Error(Errc::Parse, "negperm must be a permutation of [1,r]");
  }
  if (!is_reduced_for(rd, sw)) throw Error(Errc::NotReduced, "word is not reduced for (u,w)");
  const int l = static_cast<int>(sw.letters.size());
  const std::size_t n = static_cast<std::size_t>(r + l);
  // position p <-> vertex id: p < r gives -r+p, otherwise p-r+1
  auto id_of = [&](std::size_t p) { return p < static_cast<std::size_t>(r) ? -r + static_cast<int>(p) : static_cast<int>(p) - r + 1; };
  std::vector<int> letter(n);
  for (std::size_t p = 0; p < n; ++p) letter[p] = p < static_cast<std::size_t>(r) ? sw.negperm[p] : sw.letters[p - r];
  auto [uword, wword] = split_word(sw);
  WeylWord winv(wword.rbegin(), wword.rend());

  BZSeed out;
  out.word = sw;
  out.letter = letter;
  std::vector<IntVec> gamma(n), delta(n);
  WeylWord upre, wpre;
  for (std::size_t p = 0; p < n; ++p) {
    int a = std::abs(letter[p]);
    IntVec om = rd.fundamental_weight(a);
    if (p < static_cast<std::size_t>(r)) {
      gamma[p] = om;
      delta[p] = rd.apply_weight(winv, om);
    } else {
      (letter[p] < 0 ? upre : wpre).push_back(a);
      gamma[p] = rd.apply_weight(upre, om);
      WeylWord t = winv;
      t.insert(t.end(), wpre.begin(), wpre.end());
      delta[p] = rd.apply_weight(t, om);
    }
    out.labels.push_back(make_label(gamma[p], delta[p]));
  }
  // Lambda_{kj} = (gamma_k, gamma_j) - (delta_k, delta_j) for k > j, skew completion
  IntMat L(n, IntVec(n, 0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j) {
      BigRat v = rd.form(gamma[k], gamma[j]) - rd.form(delta[k], delta[j]);
      if (boost::multiprecision::denominator(v) != 1) throw Error(Errc::Internal, "non-integral Lambda entry");
      Int x = static_cast<Int>(boost::multiprecision::numerator(v));
      L[k][j] = x;
      L[j][k] = -x;
    }
  // k[1] on positions; infinity as a large sentinel
  constexpr std::size_t INF = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> next(n, INF);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = k + 1; j < n; ++j)
      if (std::abs(letter[j]) == std::abs(letter[k])) {
        next[k] = j;
        break;
      }
  const std::size_t last = n - 1;  // position of vertex l
  std::vector<bool> frozen(n, true);
  for (std::size_t k = r; k < n; ++k)
    if (next[k] != INF && next[k] <= last) frozen[k] = false;
  auto eps = [&](std::size_t p) -> Int { return letter[p] > 0 ? 1 : -1; };
  std::vector<std::size_t> ufpos;
  for (std::size_t k = 0; k < n; ++k)
    if (!frozen[k]) ufpos.push_back(k);
  IntMat B(n, IntVec(ufpos.size(), 0));
  for (std::size_t c = 0; c < ufpos.size(); ++c) {
    std::size_t k = ufpos[c];
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t j1 = next[j], k1 = next[k];
      Int cjk = rd.cartan[std::abs(letter[j]) - 1][std::abs(letter[k]) - 1];
      int fired = 0;
      Int val = 0;
      auto fire = [&](Int v) {
        ++fired;
        val = v;
      };
      if (k == j1) fire(-eps(k));
      if (j == k1) fire(eps(j));
      if (j < k && k < j1 && j1 < k1 && eps(k) == eps(j1)) fire(-eps(k) * cjk);
      if (k < j && j < k1 && k1 < j1 && eps(j) == eps(k1)) fire(eps(j) * cjk);
      if (j < k && k < k1 && k1 < j1 && eps(k) == -eps(k1)) fire(-eps(k) * cjk);
      if (k < j && j < j1 && j1 < k1 && eps(j) == -eps(j1)) fire(eps(j) * cjk);
      if (fired > 1) throw Error(Errc::Internal, "more than one Btilde case applies");
      B[j][c] = val;
    }
  }
  std::vector<int> ids(n), d(n);
  std::vector<std::string> lab(n);
  for (std::size_t p = 0; p < n; ++p) {
    ids[p] = id_of(p);
    d[p] = rd.d[std::abs(letter[p]) - 1];
    lab[p] = out.labels[p].display;
  }
  out.seed = make_seed(ids, frozen, d, B, L, lab);
  auto compat = check_compatible(out.seed);
  if (!compat.ok) throw Error(Errc::Incompatible, "BZ seed fails compatibility at (" + std::to_string(compat.bad_i) + "," +
                                                     std::to_string(compat.bad_k) + ")");
  return out;
}

/// Classical seed with the opposite sign convention and Lambda = 0.
inline BZSeed build_bfz_seed(const RootData& rd, const SignedWord& sw) {
  BZSeed s = build_bz_seed(rd, sw);
  for (auto& row : s.seed.B)
    for (auto& x : row) x = -x;
  for (auto& row : s.seed.Lambda)
    for (auto& x : row) x = 0;
  return s;
}

inline SignedWord parse_signed_word(const std::string& text) {
  SignedWord sw;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size() || v == 0) throw std::invalid_argument("bad");
      sw.letters.push_back(v);
    } catch (...) {
      throw Error(Errc::Parse, "bad letter '" + tok + "'");
    }
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ') flush();
    else tok += c;
  }
  flush();
  return sw;
}

}  // namespace qcf
