#include <gtest/gtest.h>

#include "edslab/divgraph.hpp"

using namespace edslab;

namespace {

WeierstrassCurve e37() { return WeierstrassCurve(0, 0, 1, -1, 0); }
RationalPoint pt(long x, long y) { return RationalPoint::affine(x, y); }

// n -> m minimal by definition, O(|S|^3) on purpose
std::vector<Arrow> naive_arrows(const IndexDivisibilitySet& s) {
  std::vector<Arrow> out;
  for (auto n : s.elements) {
    for (auto m : s.elements) {
      if (m <= n || m % n) continue;
      bool minimal = true;
      for (auto k : s.elements) {
        if (k != n && k != m && k % n == 0 && m % k == 0) minimal = false;
      }
      if (minimal) out.push_back({n, m});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no edslab::Error thrown";
  return ErrorKind::Parse;
}

}  // namespace

TEST(IndexSet, E37UpTo500) {
  EdsContext ctx(e37(), pt(0, 0));
  Apparition app(ctx);
  const auto s = enumerate_set(app, 500);
  EXPECT_EQ(s.elements,
            (std::vector<std::uint64_t>{1, 40, 53, 63, 80, 127, 160, 189, 200, 320, 400, 441, 443}));
  EXPECT_TRUE(s.contains(441));
  EXPECT_FALSE(s.contains(442));
}

TEST(IndexSet, SameResultForAnyJobCount) {
  EdsContext ctx(WeierstrassCurve(2, 1, 1, 7, 4), pt(4, 7));
  Apparition one(ctx);
  const auto base = enumerate_set(one, 3000, 1);
  for (unsigned jobs : {2u, 3u, 8u}) {
    EdsContext c2(WeierstrassCurve(2, 1, 1, 7, 4), pt(4, 7));
    Apparition app(c2);
    EXPECT_EQ(enumerate_set(app, 3000, jobs).elements, base.elements) << jobs;
  }
  EXPECT_EQ(anomalous_primes(e37(), 3000, 1), anomalous_primes(e37(), 3000, 5));
}

TEST(IndexSet, OracleSetsUpTo80) {
  // exact n | D_n on three more curves, oracle
  struct Case {
    WeierstrassCurve c;
    RationalPoint p;
    std::vector<std::uint64_t> want;
  };
  const Case cases[] = {
      {WeierstrassCurve(1, 0, 0, -2, 1), pt(1, 0), {1, 7, 8, 13, 16, 24, 32, 48, 49, 56, 64, 72}},
      {WeierstrassCurve(1, -1, 1, 0, 0), pt(0, 0), {1, 8, 16, 32, 64, 71}},
      {WeierstrassCurve(0, 1, 1, 0, 0), pt(0, 0), {1, 10, 20, 30, 40, 50, 60, 80}},
  };
  for (const auto& [c, p, want] : cases) {
    EdsContext ctx(c, p);
    Apparition app(ctx);
    EXPECT_EQ(enumerate_set(app, 80).elements, want) << c.literal();
  }
}

TEST(IndexSet, BoundIsEnforced) {
  EdsContext ctx(e37(), pt(0, 0));
  Apparition app(ctx);
  EXPECT_EQ(kind_of([&] { enumerate_set(app, 2'000'000); }), ErrorKind::Precondition);
}

TEST(Arrows, MatchTheDefinition) {
  EdsContext ctx(WeierstrassCurve(2, 1, 1, 7, 4), pt(4, 7));
  Apparition app(ctx);
  const auto s = enumerate_set(app, 2000);
  EXPECT_EQ(arrows(s), naive_arrows(s));
  EdsContext e(e37(), pt(0, 0));
  Apparition ea(e);
  const auto s37 = enumerate_set(ea, 500);
  const auto a37 = arrows(s37);
  EXPECT_EQ(a37, naive_arrows(s37));
  EXPECT_TRUE(std::binary_search(a37.begin(), a37.end(), Arrow{40, 80}));
  EXPECT_FALSE(std::binary_search(a37.begin(), a37.end(), Arrow{40, 160}));
}

TEST(Arrows, Classification) {
  EdsContext r(WeierstrassCurve(2, 1, 1, 7, 4), pt(4, 7));
  Apparition ra(r);
  const auto c = classify_arrow(ra, {1, 30});
  EXPECT_EQ(c.kind, ArrowKind::nonstandard);
  EXPECT_EQ(c.lhs, 3);  // (3/2)(5/3)(6/5)
  EXPECT_EQ(c.t, 1u);
  EXPECT_EQ(c.p0, 2u);
  EXPECT_TRUE(c.bound_ok && c.weight_filter_ok && !c.neron_caveat);

  EdsContext e(e37(), pt(0, 0));
  Apparition ea(e);
  EXPECT_EQ(classify_arrow(ea, {1, 53}).kind, ArrowKind::aliquot_number);
  EXPECT_EQ(classify_arrow(ea, {40, 80}).kind, ArrowKind::prime_divides_Dn);
  EXPECT_EQ(kind_of([&] { classify_arrow(ea, {2, 3}); }), ErrorKind::Precondition);
  EXPECT_EQ(kind_of([&] { classify_arrow(ea, {5, 5}); }), ErrorKind::Precondition);
}

TEST(Arrows, EveryArrowOfARegularContextIsClassified) {
  EdsContext e(e37(), pt(0, 0));
  Apparition ea(e);
  for (const auto& a : arrows(enumerate_set(ea, 2000))) EXPECT_NO_THROW(classify_arrow(ea, a)) << a.from << "->" << a.to;
}

TEST(Arrows, TwicePrimeCountIsOutsideTheHypothesis) {
  // #E(F_3) = 6 on 43a1, so 10 -> 30 has a prime weight the classification does not cover
  EdsContext c(WeierstrassCurve(0, 1, 1, 0, 0), pt(0, 0));
  Apparition app(c);
  EXPECT_EQ(count_points(c.curve(), 3), 6u);
  EXPECT_TRUE(outside_prime_weight_hypothesis(app, {10, 30}));
  try {
    classify_arrow(app, {10, 30});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::UnclassifiableArrow);
    EXPECT_NE(std::string(err.what()).find("2p"), std::string::npos);
  }
}

TEST(Aliquot, CyclesAndEllipticThreshold) {
  EdsContext e(e37(), pt(0, 0));
  Apparition ea(e);
  const auto cycles = aliquot_cycles(ea, 500, false);
  ASSERT_EQ(cycles.size(), 3u);
  EXPECT_EQ(cycles[1].primes, std::vector<std::uint64_t>{127});
  for (const auto& cyc : cycles) {
    const auto rep = check_prop63(ea, cyc);
    EXPECT_TRUE(rep.elliptic_cycle);
    EXPECT_EQ(rep.product, 1);
    EXPECT_TRUE(rep.implication_holds);
    EXPECT_TRUE(rep.threshold_met);
  }
  EXPECT_NEAR(prop63_threshold(1), 1.0 / ((std::sqrt(2.0) - 1) * (std::sqrt(2.0) - 1)), 1e-12);
  EXPECT_GT(prop63_threshold(2), prop63_threshold(1));
  EXPECT_EQ(kind_of([&] { check_prop63(ea, AliquotCycle{}); }), ErrorKind::Precondition);

  // anomalous primes are the length-one elliptic cycles
  const auto ell = elliptic_aliquot_cycles(e37(), 500);
  std::vector<std::uint64_t> singletons;
  for (const auto& c : ell) {
    if (c.primes.size() == 1) singletons.push_back(c.primes[0]);
  }
  EXPECT_EQ(singletons, anomalous_primes(e37(), 500));
}

TEST(Aliquot, GeneralizedOnTheNodalCubic) {
  const WeierstrassCurve nodal(3, 2, 3, 1, 0, true);
  EdsContext ctx(nodal, pt(0, 0));
  Apparition app(ctx);
  EXPECT_TRUE(aliquot_cycles(app, 50, false).empty());
  const auto gen = aliquot_cycles(app, 50, true);
  ASSERT_EQ(gen.size(), 2u);
  EXPECT_EQ(gen[0].primes, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(gen[0].aliquot_number(), 6u);
  EXPECT_TRUE(is_generalized_aliquot_number(app, 6));
  EXPECT_TRUE(is_generalized_aliquot_number(app, 5));
  EXPECT_FALSE(is_generalized_aliquot_number(app, 10));
  EXPECT_FALSE(is_generalized_aliquot_number(app, 12));
  EXPECT_EQ(generalized_aliquot_numbers(app, 50), (std::vector<std::uint64_t>{5, 6}));
}

TEST(GdGraph, ThirtyOnTheSecondCurve) {
  EdsContext r(WeierstrassCurve(2, 1, 1, 7, 4), pt(4, 7));
  Apparition app(r);
  const auto g = gd_graph(app, 1, 30);
  EXPECT_EQ(g.vertices, (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_TRUE(g.connected && g.coprime_to_dn && g.supports_arrow());
  EXPECT_EQ(g.rank_ratio_product, 3);
  EXPECT_TRUE(g.identity_holds);
  EXPECT_EQ(g.in_degree.at(3), 2u);
  EXPECT_EQ(g.out_degree.at(5), 2u);
}

TEST(GdGraph, IdentityOnAllArrows) {
  for (const auto& [c, p] : {std::pair{e37(), pt(0, 0)}, std::pair{WeierstrassCurve(2, 1, 1, 7, 4), pt(4, 7)}}) {
    EdsContext ctx(c, p);
    Apparition app(ctx);
    for (const auto& a : arrows(enumerate_set(app, 1000))) {
      const auto g = gd_graph(app, a.from, a.weight());
      EXPECT_TRUE(g.identity_holds) << a.from << "->" << a.to;
    }
  }
}

TEST(Properties, RegularContextsPassEveryCheck) {
  for (const auto& [c, p] : {std::pair{e37(), pt(0, 0)}, std::pair{WeierstrassCurve(2, 1, 1, 7, 4), pt(4, 7)}}) {
    EdsContext ctx(c, p);
    Apparition app(ctx);
    const auto s = enumerate_set(app, 600);
    const auto a = arrows(s);
    EXPECT_TRUE(check_closure(s).empty());
    EXPECT_TRUE(check_prime_arrows(app, s, a).empty());
    EXPECT_TRUE(check_aliquot_arrows(app, s, a).empty());
    EXPECT_TRUE(check_multiplier_closure(app, s).empty());
    EXPECT_TRUE(check_divisor_chains(app, s, a).empty());
  }
}

TEST(Properties, CheckersReportPlantedDefects) {
  EdsContext ctx(e37(), pt(0, 0));
  Apparition app(ctx);
  auto s = enumerate_set(app, 500);
  auto a = arrows(s);
  a.erase(std::find(a.begin(), a.end(), Arrow{40, 80}));
  EXPECT_FALSE(check_prime_arrows(app, s, a).empty());
  s.elements.erase(std::find(s.elements.begin(), s.elements.end(), 80));
  EXPECT_FALSE(check_multiplier_closure(app, s).empty());
}

TEST(WeightBound, Table) {
  const auto wb = nonstandard_weight_bound(10);
  EXPECT_EQ(wb.nu, 2u);
  EXPECT_EQ(wb.min_weight, 143);
  EXPECT_EQ(nonstandard_weight_bound(2).nu, 1u);
  // more prime factors as the primes grow
  EXPECT_LT(nonstandard_weight_bound(100).nu, nonstandard_weight_bound(1000).nu);
}
