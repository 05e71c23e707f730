// Seeds, mutation, cluster variables, membership and tropical maps.

#include <gtest/gtest.h>

#include <random>

#include "qcf/bzseed.hpp"
#include "qcf/cluster.hpp"
#include "support.hpp"

using namespace qcf;
using namespace qcf::testing;

namespace {

BZSeed bz(const std::string& type, const std::string& word) {
  SignedWord sw = parse_signed_word(word);
  RootData rd = make_root_data(type);
  for (int i = rd.rank; i >= 1; --i) sw.negperm.push_back(i);
  return build_bz_seed(rd, sw);
}

std::vector<int> random_path(std::mt19937& rng, const Seed& s, int len) {
  std::vector<int> labels;
  for (std::size_t p : s.uf) labels.push_back(s.ids[p]);
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  std::vector<int> path;
  while (static_cast<int>(path.size()) < len) {
    int k = labels[pick(rng)];
    if (!path.empty() && path.back() == k && labels.size() > 1) continue;
    path.push_back(k);
  }
  return path;
}

}  // namespace

TEST(Seed, RandomMutationIsInvolutiveAndCompatible) {
  std::mt19937 rng(7);
  for (int t = 0; t < 100; ++t) {
    Seed s = random_compatible_seed(rng);
    ASSERT_LE(s.size(), 8u);
    auto c0 = check_compatible(s);
    ASSERT_TRUE(c0.ok);
    for (std::size_t p : s.uf) {
      int k = s.ids[p];
      Seed m = mutate_matrices(s, k);
      auto c1 = check_compatible(m);
      ASSERT_TRUE(c1.ok) << "trial " << t << " k " << k;
      EXPECT_EQ(c1.dprime, c0.dprime);
      EXPECT_FALSE(skew_symmetrizability_violation(m));
      Seed mm = mutate_matrices(m, k);
      EXPECT_EQ(mm.B, s.B);
      EXPECT_EQ(mm.Lambda, s.Lambda);
    }
  }
}

TEST(Seed, RandomMutationOfVariablesIsInvolutive) {
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    Seed s = random_compatible_seed(rng, 3);
    auto st = initial_state(s, LaurentRing{});
    for (std::size_t p : s.uf) {
      int k = s.ids[p];
      auto back = mutate_variables(mutate_variables(st, k), k);
      for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(back.vars[i], st.vars[i]);
    }
  }
}

TEST(Seed, A2MutationOfPrincipalPart) {
  Seed s = type_seed("A2");
  EXPECT_EQ(s.B[0], (IntVec{0, 1}));
  EXPECT_EQ(s.B[1], (IntVec{-1, 0}));
  Seed m = mutate_matrices(s, 1);
  EXPECT_EQ(m.B[0], (IntVec{0, -1}));
  EXPECT_EQ(m.B[1], (IntVec{1, 0}));
  // frozen rows: f3 row (1,0) -> (-1, 0 + [1]_+[1]_+) ; f4 row unchanged
  EXPECT_EQ(m.B[2], (IntVec{-1, 1}));
  EXPECT_EQ(m.B[3], (IntVec{0, 1}));
}

TEST(Seed, PsiMap) {
  Seed s = type_seed("A2");
  IntMat P = psi_map(s, 1);
  // psi_1(f1) = -f1 + f2, the other basis vectors fixed
  EXPECT_EQ(P[0][0], -1);
  EXPECT_EQ(P[1][0], 1);
  EXPECT_EQ(P[2][0], 0);
  EXPECT_EQ(P[3][0], 0);
  for (std::size_t j = 1; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(P[i][j], i == j ? 1 : 0);
  // Lambda' = P^T Lambda P recomputed by hand
  Seed m = mutate_matrices(s, 1);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Int v = 0;
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) v += P[a][i] * s.Lambda[a][b] * P[b][j];
      EXPECT_EQ(m.Lambda[i][j], v);
    }
  EXPECT_THROW(psi_map(s, 3), Error);
}

TEST(Seed, IncompatibleSeedRejected) {
  Seed s = make_seed({1, 2}, {false, true}, {1, 1}, {{0}, {1}}, {{0, -1}, {1, 0}});
  EXPECT_TRUE(check_compatible(s).ok);
  EXPECT_EQ(check_compatible(s).dprime, (std::vector<Int>{1}));
  Seed bad = make_seed({1, 2}, {false, true}, {1, 1}, {{0}, {1}}, {{0, 1}, {-1, 0}});
  auto r = check_compatible(bad);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.bad_i, 1);
  EXPECT_THROW(make_seed({1, 2}, {false, true}, {1, 1}, {{0}, {1}}, {{0, 1}, {1, 0}}), Error);
}

TEST(Cluster, PentagonA2UpToSwap) {
  for (bool quantum : {true, false}) {
    Seed s = type_seed("A2", quantum);
    auto st = initial_state(s, LaurentRing{});
    auto end = mutate_variables(st, {1, 2, 1, 2, 1});
    auto allow = [&](std::size_t a, std::size_t b) { return st.vars[a] == end.vars[b]; };
    auto sigma = seeds_equal_up_to_permutation(s, end.cur, allow);
    ASSERT_TRUE(sigma);
    EXPECT_EQ((*sigma)[0], 1u);
    EXPECT_EQ((*sigma)[1], 0u);
    EXPECT_EQ(end.vars[0], st.vars[1]);
    EXPECT_EQ(end.vars[1], st.vars[0]);
  }
}

TEST(Cluster, ExplorationA2) {
  auto g = explore(type_seed("A2"), LaurentRing{}, 6);
  EXPECT_TRUE(g.closed);
  EXPECT_EQ(g.nodes.size(), 5u);
  EXPECT_EQ(g.variables.size(), 5u);
  EXPECT_EQ(g.variables.size() - g.initial_count, 3u);
  auto c = explore(type_seed("A2", false), IntegerRing{}, 6);
  EXPECT_EQ(c.variables.size(), 5u);
  // v -> 1 on the quantum variables gives the classical ones
  Specialization<IntegerRing> one{IntegerRing{}};
  std::set<std::string> classical;
  for (const auto& x : c.variables) classical.insert(x.str());
  for (const auto& x : g.variables) EXPECT_TRUE(classical.count(specialize_poly(x, one).str())) << x.str();
}

TEST(Cluster, ExchangeRelationAlongRandomPaths) {
  std::mt19937 rng(3);
  std::vector<Seed> seeds{type_seed("A2"), type_seed("B2"), type_seed("G2"), bz("A1", "1,-1").seed,
                          bz("A2", "1,2,1,-1,-2,-1").seed};
  for (const Seed& s : seeds) {
    auto st = initial_state(s, LaurentRing{});
    for (int k : random_path(rng, s, 8)) {
      auto mu = mutate_variables(st, k);
      ASSERT_TRUE(exchange_relation_holds(st, mu, k));
      st = mu;
    }
  }
}

TEST(Cluster, SL2VariableGAndF) {
  BZSeed b = bz("A1", "1,-1");
  const Seed& s = b.seed;
  EXPECT_EQ(s.ids, (std::vector<int>{-1, 1, 2}));
  auto st0 = initial_state(s, LaurentRing{});
  auto st = mutate_variables(st0, 1);
  auto gf = extract_gf(st.vars[1], s, Dominance(s.B));
  EXPECT_EQ(gf.g, (Exp{1, -1, 1}));
  std::map<IntVec, Laurent> f{{IntVec{0}, Laurent(1)}, {IntVec{1}, Laurent(1)}};
  EXPECT_EQ(gf.f, f);
  // x1 x1' = v^2 x^(f-1 + f2) + 1
  auto prod = st0.vars[1] * st.vars[1];
  auto tor = st.torus;
  auto rhs = TwistedLaurent<LaurentRing>::monomial(tor, {1, 0, 1}, Laurent::vpow(2)) + TwistedLaurent<LaurentRing>::one(tor);
  EXPECT_EQ(prod, rhs);
}

TEST(Cluster, LaurentAndPointedToDepth) {
  for (const char* type : {"A2", "B2", "G2"}) {
    Seed s = type_seed(type);
    Dominance dom(s.B);
    for (const auto& path : mutation_sequences(s, 5)) {
      auto st = mutate_variables(initial_state(s, LaurentRing{}), path);
      for (std::size_t p : s.uf) {
        auto gf = extract_gf(st.vars[p], s, dom);
        for (std::size_t i = 0; i < s.size(); ++i)
          if (s.frozen[i]) EXPECT_GE(gf.g[i], 0);
        EXPECT_EQ(gf.f.at(IntVec(s.nuf(), 0)), Laurent(1));
      }
    }
  }
}

TEST(Cluster, ClassicalExpansionMatchesRationalEvaluation) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(1, 9), den(1, 7);
  for (const char* type : {"A2", "B2", "G2"}) {
    Seed s = type_seed(type, false);
    for (int t = 0; t < 10; ++t) {
      std::vector<BigRat> x;
      for (std::size_t i = 0; i < s.size(); ++i) x.emplace_back(num(rng), den(rng));
      auto path = random_path(rng, s, 5);
      auto st = mutate_variables(initial_state(s, IntegerRing{}), path);
      auto y = x;
      Seed cur = s;
      for (int k : path) {
        y = classical_mutate(cur, y, k);
        cur = mutate_matrices(cur, k);
      }
      for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(evaluate_at(st.vars[i], x), y[i]) << type;
    }
  }
}

TEST(Membership, ClusterVariableIsUpper) {
  Seed s = type_seed("A2");
  auto st = mutate_variables(initial_state(s, LaurentRing{}), {1, 2});
  auto rep = upper_membership_bounded(st.vars[1], s, 3, true);
  EXPECT_TRUE(rep.pass) << rep.reason;
  EXPECT_GT(rep.seeds_checked, 1u);
}

TEST(Membership, InverseOfUnfrozenIsNotUpper) {
  Seed s = type_seed("A2");
  auto tor = initial_state(s, LaurentRing{}).torus;
  auto z = TwistedLaurent<LaurentRing>::monomial(tor, {-1, 0, 0, 0});
  auto rep = upper_membership_bounded(z, s, 2, false);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.witness, (std::vector<int>{1}));
}

TEST(Membership, InverseOfFrozenFailsOnlyWhenCompactified) {
  Seed s = type_seed("A2");
  auto tor = initial_state(s, LaurentRing{}).torus;
  auto z = TwistedLaurent<LaurentRing>::monomial(tor, {0, 0, -1, 0});
  EXPECT_TRUE(upper_membership_bounded(z, s, 2, false).pass);
  auto rep = upper_membership_bounded(z, s, 2, true);
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.nu_fail);
  EXPECT_EQ(*rep.nu_fail, -1);
  EXPECT_EQ(rep.nu_vertex, 3);
}

TEST(Tropical, AdjacentTransform) {
  Seed s = type_seed("A2");
  EXPECT_EQ(tropical_transform({1, 0, 0, 0}, s, 1), (Exp{-1, 0, 1, 0}));
  EXPECT_EQ(tropical_transform({-1, 0, 0, 0}, s, 1), (Exp{1, -1, 0, 0}));
  EXPECT_EQ(tropical_transform({0, 2, 0, 5}, s, 1), (Exp{0, 2, 0, 5}));
}

TEST(Tropical, InvolutionAndPentagon) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> e(-6, 6);
  Seed s = type_seed("A2");
  for (int t = 0; t < 50; ++t) {
    Exp m(4);
    for (auto& x : m) x = e(rng);
    EXPECT_EQ(tropical_along(m, s, {2, 2}), m);
    Exp r = tropical_along(m, s, {1, 2, 1, 2, 1});
    EXPECT_EQ((Exp{r[1], r[0], r[2], r[3]}), m);
  }
}

TEST(Tropical, DegreesFollowTropicalMaps) {
  Seed s = type_seed("B2");
  auto paths = mutation_sequences(s, 3);
  for (const auto& path : mutation_sequences(s, 2)) {
    auto st = mutate_variables(initial_state(s, LaurentRing{}), path);
    for (std::size_t p : s.uf) {
      auto rep = compatibly_pointed_check(st.vars[p], s, paths);
      EXPECT_TRUE(rep.ok) << rep.reason;
    }
  }
}

TEST(Tropical, OptimizedFrozenVertex) {
  Seed s = type_seed("A2");
  EXPECT_TRUE(optimized_check(s, 3));
  EXPECT_FALSE(optimized_check(mutate_matrices(s, 1), 3));
  EXPECT_THROW(optimized_check(s, 1), Error);
}

TEST(Tropical, InjectiveReachableA2) {
  Seed s = type_seed("A2");
  bool found = false;
  for (const auto& path : mutation_sequences(s, 4))
    for (const auto& sigma : {std::map<int, int>{{1, 1}, {2, 2}}, std::map<int, int>{{1, 2}, {2, 1}}})
      if (!path.empty() && injective_reachable_witness(s, path, sigma, LaurentRing{})) found = true;
  EXPECT_TRUE(found);
  EXPECT_FALSE(injective_reachable_witness(s, {1}, {{1, 1}, {2, 2}}, LaurentRing{}));
}

TEST(A1Basis, BZSeed) {
  auto rep = a1_basis_check(bz("A1", "1,-1").seed, 4, LaurentRing{});
  EXPECT_TRUE(rep.pass) << rep.reason;
  EXPECT_FALSE(rep.isolated);
  EXPECT_EQ(rep.products_checked, 25u);
}

TEST(A1Basis, IsolatedVertexOverIntegers) {
  Seed s = make_seed({1, 2}, {false, true}, {1, 1}, {{0}, {0}}, {});
  auto rep = a1_basis_check(s, 3, IntegerRing{});
  EXPECT_TRUE(rep.pass) << rep.reason;
  EXPECT_TRUE(rep.isolated);
}

TEST(A1Basis, IsolatedVertexRefusedWhenTwoIsAZeroDivisor) {
  Seed s = make_seed({1, 2}, {false, true}, {1, 1}, {{0}, {0}}, {});
  try {
    initial_state(s, ZModRing(2, 1));
    FAIL() << "expected a refusal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AssumptionViolated);
  }
  EXPECT_NO_THROW(initial_state(s, ZModRing(3, 1)));
}

TEST(Specialize, CommutesWithMutation) {
  Specialization<IntegerRing> to_z{IntegerRing{}};
  Specialization<ZModRing> to_f5{ZModRing(5, 2)};
  for (const char* type : {"A2", "B2", "G2"}) {
    Seed s = type_seed(type);
    for (const auto& path : mutation_sequences(s, 5)) {
      auto q = mutate_variables(initial_state(s, LaurentRing{}), path);
      auto z = mutate_variables(specialize_state(initial_state(s, LaurentRing{}), to_z), path);
      auto f = mutate_variables(specialize_state(initial_state(s, LaurentRing{}), to_f5), path);
      auto qz = specialize_state(q, to_z);
      auto qf = specialize_state(q, to_f5);
      for (std::size_t i = 0; i < s.size(); ++i) {
        ASSERT_TRUE(same_terms(qz.vars[i], z.vars[i])) << type;
        ASSERT_TRUE(same_terms(qf.vars[i], f.vars[i])) << type;
      }
    }
  }
}
