#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace catext;

namespace {

IntVec iv(std::initializer_list<long long> xs) {
  IntVec v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

AbFunctorPtr trivial_bg(std::size_t n, const Integer& m) {
  return fx::constant(fx::bgroup(n), PresentedAbGroup::cyclic(m));
}

// Two parallel arrows a => b; the nerve is a circle.
FinCat parallel_arrows() {
  return FinCat({"a", "b"}, {{0, 0}, {1, 1}, {0, 1}, {0, 1}}, {0, 1},
                {{0, 0, 0}, {1, 1, 1}, {2, 0, 2}, {3, 0, 3}, {1, 2, 2}, {1, 3, 3}});
}

}  // namespace

TEST(Differential, Examples) {
  AbFunctorPtr phi = trivial_bg(3, 5);
  Cochain u = Cochain::zero(phi, 0);
  u.set(0, iv({2}));
  EXPECT_TRUE(differential(u).is_zero());
  // a 1-cochain that is nonzero on the identity is not a cocycle
  Cochain z = Cochain::zero(phi, 1);
  z.set(z.chain_list()->index_of_mors({0}), iv({1}));
  EXPECT_FALSE(is_cocycle(z));
}

TEST(Differential, SquareIsZeroOnRandomCochains) {
  std::mt19937_64 rng(11);
  std::vector<AbFunctorPtr> phis{trivial_bg(3, 3), fx::module_functor(FiniteGroup::cyclic(2), 8, fx::negation(2)),
                                 fx::arrow_functor(), fx::constant(parallel_arrows(), PresentedAbGroup::free(1))};
  for (const auto& phi : phis)
    for (std::size_t n = 0; n <= 2; ++n)
      for (int t = 0; t < 10; ++t) {
        Cochain u = oracle::random_cochain(rng, phi, n);
        EXPECT_TRUE(differential(differential(u)).is_zero());
      }
}

TEST(Differential, MatrixMatchesDirectEvaluation) {
  std::mt19937_64 rng(5);
  AbFunctorPtr phi = fx::arrow_functor();
  for (std::size_t n = 0; n <= 2; ++n) {
    CochainSpace a = make_cochain_space(phi, n), b = make_cochain_space(phi, n + 1);
    SparseMatrix d = differential_matrix(a, b);
    for (int t = 0; t < 5; ++t) {
      Cochain u = oracle::random_cochain(rng, phi, n);
      IntVec v = d.apply(u.flatten());
      lattice::reduce_in_place(v, b.moduli);
      EXPECT_EQ(v, differential(u).flatten());
    }
  }
}

TEST(Cohomology, BZ3TrivialZ3AgainstBruteForce) {
  Cohomology h(trivial_bg(3, 3), 2);
  EXPECT_EQ(h.invariants(), iv({3}));
  EXPECT_EQ(oracle::h2_trivial_bruteforce(FiniteGroup::cyclic(3), 3), 3u);
}

TEST(Cohomology, SmallGroupsAgainstBruteForceH2) {
  for (auto [g, m] : std::vector<std::pair<FiniteGroup, std::size_t>>{
           {FiniteGroup::cyclic(2), 2}, {FiniteGroup::cyclic(2), 4}, {FiniteGroup::cyclic(4), 2},
           {FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)), 2}}) {
    Cohomology h(fx::constant(one_object_cat(g), PresentedAbGroup::cyclic(m)), 2);
    EXPECT_EQ(oracle::order_of_invariants(h.invariants()), oracle::h2_trivial_bruteforce(g, m));
  }
}

TEST(Cohomology, CyclicGroupsAgainstPeriodicResolution) {
  struct Case {
    std::size_t n;
    Integer m;
    IntMatrix a;
  };
  std::vector<Case> cases{{2, 8, int_matrix({{-1}})},
                          {2, 8, int_matrix({{-1, 0}, {0, -1}})},
                          {2, 9, int_matrix({{-1}})},
                          {3, 9, int_matrix({{1}})},
                          {4, 4, int_matrix({{1}})},
                          {2, 4, int_matrix({{0, 1}, {1, 0}})},
                          {3, 3, int_matrix({{0, -1}, {1, -1}})}};
  for (const auto& c : cases) {
    std::vector<IntMatrix> action{IntMatrix::identity(c.a.rows())};
    for (std::size_t i = 1; i < c.n; ++i) action.push_back(c.a * action.back());
    AbFunctorPtr phi = fx::module_functor(FiniteGroup::cyclic(c.n), c.m, action);
    for (std::size_t deg = 0; deg <= 3; ++deg) {
      Cohomology h(phi, deg);
      EXPECT_EQ(oracle::order_of_invariants(h.invariants()), oracle::cyclic_h_order({c.n, c.m, c.a}, deg))
          << "n=" << c.n << " m=" << c.m << " deg=" << deg;
    }
  }
}

TEST(Cohomology, TruncatedTorusAtFixedLevel) {
  // C2 acting by -1 on (Z/8)^2: H^0 = H^2 = (Z/2)^2, and at a finite level H^1 is (Z/2)^2 as well.
  AbFunctorPtr phi = fx::module_functor(FiniteGroup::cyclic(2), 8, fx::negation(2));
  EXPECT_EQ(Cohomology(phi, 0).invariants(), iv({2, 2}));
  EXPECT_EQ(Cohomology(phi, 2).invariants(), iv({2, 2}));
  EXPECT_EQ(Cohomology(phi, 1).invariants(), iv({2, 2}));
  // p odd: everything vanishes already at a fixed level
  AbFunctorPtr odd = fx::module_functor(FiniteGroup::cyclic(2), 9, fx::negation(1));
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_TRUE(Cohomology(odd, n).invariants().empty());
}

TEST(Cohomology, NonGroupCategories) {
  // circle: H^0 = Z, H^1 = Z, H^2 = 0
  AbFunctorPtr z = fx::constant(parallel_arrows(), PresentedAbGroup::free(1));
  EXPECT_EQ(Cohomology(z, 0).invariants(), iv({0}));
  EXPECT_EQ(Cohomology(z, 1).invariants(), iv({0}));
  EXPECT_TRUE(Cohomology(z, 2).invariants().empty());
  // poset with a terminal object is contractible
  AbFunctorPtr p = fx::constant(poset_cat(3, {{0, 1}, {1, 2}, {0, 2}}), PresentedAbGroup::free(1));
  EXPECT_EQ(Cohomology(p, 0).invariants(), iv({0}));
  EXPECT_TRUE(Cohomology(p, 1).invariants().empty());
  EXPECT_TRUE(Cohomology(p, 2).invariants().empty());
  // [0<1] x B(Z/2) is equivalent in cohomology to B(Z/2)
  AbFunctorPtr q = fx::constant(fx::arrow_times_bz2(), PresentedAbGroup::cyclic(2));
  for (std::size_t n = 0; n <= 2; ++n) EXPECT_EQ(Cohomology(q, n).invariants(), iv({2}));
}

TEST(Cohomology, ClassesAndRepresentatives) {
  auto h = std::make_shared<const Cohomology>(trivial_bg(4, 4), 2);
  ASSERT_EQ(h->invariants(), iv({4}));
  for (long long c = 0; c < 4; ++c) {
    Cochain z = h->representative(iv({c}));
    EXPECT_TRUE(is_cocycle(z));
    EXPECT_EQ(h->class_of(z), iv({c}));
  }
  Cochain not_cocycle = Cochain::zero(trivial_bg(4, 4), 2);
  not_cocycle.set(5, iv({1}));
  EXPECT_THROW(h->class_of(not_cocycle), PreconditionError);
}

TEST(Cocycles, Examples) {
  // extracted cocycles are cocycles and regular
  Extension e = fx::ext_bz4();
  Cochain z = extension_cocycle(e, canonical_section(e));
  EXPECT_TRUE(is_cocycle(z));
  EXPECT_TRUE(is_regular_2cochain(z));
  std::mt19937_64 rng(3);
  AbFunctorPtr phi = trivial_bg(2, 2);
  for (int t = 0; t < 10; ++t) EXPECT_TRUE(is_cocycle(differential(oracle::random_cochain(rng, phi, 1))));
  // perturb one value of a cocycle on B(Z/2)
  Cochain bad = z;
  bad.set(1, bad.group_at(1).add(bad.value(1), iv({1})));
  EXPECT_FALSE(is_cocycle(bad));
}

TEST(Regularize, Examples) {
  Extension e = fx::ext_bz4();
  Cochain z = extension_cocycle(e, canonical_section(e));
  Regularized r = regularize_2cocycle(z);
  EXPECT_EQ(r.z, z);
  EXPECT_TRUE(r.u.is_zero());
  // a cocycle with z(1,1) = 1: add a coboundary that is nonzero on (1, 1)
  AbFunctorPtr phi = trivial_bg(2, 2);
  Cochain u0 = Cochain::zero(phi, 1);
  u0.set(0, iv({1}));
  Cochain z2 = z + differential(u0);
  ASSERT_FALSE(is_regular_2cochain(z2));
  Regularized r2 = regularize_2cocycle(z2);
  EXPECT_TRUE(is_regular_2cochain(r2.z));
  EXPECT_EQ(r2.z, z2 + differential(r2.u));
  EXPECT_EQ(r2.u.value(0), iv({1}));
  // idempotent
  Regularized r3 = regularize_2cocycle(r2.z);
  EXPECT_EQ(r3.z, r2.z);
}

TEST(Cohomologous, Examples) {
  std::mt19937_64 rng(17);
  AbFunctorPtr phi = trivial_bg(3, 3);
  auto h = std::make_shared<const Cohomology>(phi, 2);
  Cochain z = h->representative(iv({1}));
  Cochain u0 = oracle::random_cochain(rng, phi, 1);
  auto u = cohomologous(z, z + differential(u0));
  ASSERT_TRUE(u);
  EXPECT_EQ(differential(*u), differential(u0));
  Cochain z2 = h->representative(iv({2}));
  EXPECT_FALSE(cohomologous(z, z2));
  // brute force over all 1-cochains
  ChainList c1(*phi->base(), 1);
  bool found = false;
  for (int code = 0; code < 27; ++code) {
    Cochain v = Cochain::zero(phi, 1);
    int c = code;
    for (std::size_t i = 0; i < 3; ++i, c /= 3) v.set(i, iv({c % 3}));
    if (differential(v) == z2 - z) found = true;
  }
  EXPECT_FALSE(found);
}

TEST(ScalarAction, Examples) {
  auto h2 = std::make_shared<const Cohomology>(trivial_bg(2, 2), 2);
  CohomologyClass x = class_of(h2, h2->representative(iv({1})));
  EXPECT_EQ(scalar_action_on_class(x, 1), x);
  EXPECT_EQ(scalar_action_on_class(x, 3), x);
  auto h4 = std::make_shared<const Cohomology>(trivial_bg(4, 4), 2);
  CohomologyClass y = class_of(h4, h4->representative(iv({1})));
  EXPECT_EQ(y.order(), 4);
  CohomologyClass y3 = scalar_action_on_class(y, 3);
  EXPECT_FALSE(y3 == y);
  EXPECT_TRUE(cohomologous(y3.representative, -y.representative));
}

TEST(Limits, RefusalIsPredictable) {
  AbFunctorPtr phi = trivial_bg(4, 4);
  CobarLimits tiny;
  tiny.max_cells = 10;
  EXPECT_THROW(Cohomology(phi, 2, tiny), ResourceRefusal);
  CobarLimits shallow;
  shallow.max_degree = 1;
  EXPECT_THROW(Cohomology(phi, 2, shallow), ResourceRefusal);
  try {
    Cohomology(phi, 2, tiny);
  } catch (const ResourceRefusal& r) {
    EXPECT_GT(r.estimate(), r.limit());
  }
}

TEST(Preimage, LexLeastSolution) {
  AbFunctorPtr phi = trivial_bg(2, 4);
  Cohomology h(phi, 2);
  Cochain u = Cochain::zero(phi, 1);
  u.set(1, iv({3}));
  auto w = h.preimage(differential(u));
  ASSERT_TRUE(w);
  EXPECT_EQ(differential(*w), differential(u));
  EXPECT_LE(w->flatten(), u.flatten());
}
