#include <gtest/gtest.h>

#include "edslab/apparition.hpp"

using namespace edslab;

namespace {

WeierstrassCurve e37() { return WeierstrassCurve(0, 0, 1, -1, 0); }
RationalPoint pt(long x, long y) { return RationalPoint::affine(x, y); }

}  // namespace

TEST(Apparition, PrimeRanksOnE37) {
  EdsContext ctx(e37(), pt(0, 0));
  Apparition app(ctx);
  // read off D_1..D_21: D_5 = 2, D_7 = 3, D_8 = 5, D_9 = 7, D_11 = 23, D_12 = 29
  const std::pair<std::uint64_t, std::uint64_t> known[] = {{2, 5}, {3, 7}, {5, 8}, {7, 9}, {23, 11}, {29, 12}, {53, 53}};
  for (auto [p, r] : known) {
    const auto rec = app.rank_prime(p);
    EXPECT_EQ(rec.rank, r) << p;
    EXPECT_EQ(rec.method, RankMethod::field_order);
    EXPECT_FALSE(rec.divides_first_term);
  }
}

TEST(Apparition, FieldOrderAgreesWithScan) {
  EdsContext ctx(e37(), pt(0, 0));
  Apparition app(ctx);
  for (auto p : primes_up_to(60)) EXPECT_EQ(app.rank_prime(p).rank, app.rank_exact_scan(p).rank) << p;
}

TEST(Apparition, PrimePowerLiftAgreesWithScan) {
  EdsContext ctx(e37(), pt(0, 0));
  Apparition app(ctx);
  const std::pair<std::uint64_t, unsigned> powers[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {5, 2}, {7, 2}, {37, 2}};
  for (auto [p, e] : powers) {
    const auto lifted = app.rank_prime_power(p, e);
    EXPECT_EQ(lifted.method, RankMethod::formal_lift);
    EXPECT_EQ(lifted.rank, app.rank_exact_scan(ipow(p, e)).rank) << p << "^" << e;
  }
  for (std::uint64_t n = 2; n <= 60; ++n) EXPECT_EQ(app.rank_composite(n).rank, app.rank_exact_scan(n).rank) << n;
  EXPECT_EQ(app.rank_composite(1).rank, 1u);
}

TEST(Apparition, ExceptionalTwoAdicLift) {
  // oracle: first r with m | D_r is 4, 8, 8, 16 for m = 2, 4, 8, 16
  EdsContext ctx(WeierstrassCurve(1, 0, 0, -2, 1), pt(1, 0));
  Apparition app(ctx);
  EXPECT_EQ(app.rank_prime(2).rank, 4u);
  EXPECT_EQ(app.rank_prime_power(2, 2).rank, 8u);
  EXPECT_EQ(app.rank_prime_power(2, 3).rank, 8u);
  EXPECT_EQ(app.rank_prime_power(2, 4).rank, 16u);
  for (unsigned e = 1; e <= 5; ++e) EXPECT_EQ(app.rank_prime_power(2, e).rank, app.rank_exact_scan(ipow(2, e)).rank);

  const auto& reg = app.regularity();
  EXPECT_TRUE(reg.ir1_good_at_two && reg.ir2_two_count_is_four && reg.ir3_rank_two_is_four && reg.ir4_d2_odd &&
              reg.ir5_ord2_d4_is_one);
  EXPECT_FALSE(reg.two_regular);
  EXPECT_FALSE(reg.regular);
}

TEST(Apparition, RegularityReports) {
  EdsContext e(e37(), pt(0, 0));
  Apparition ea(e);
  EXPECT_TRUE(ea.regularity().regular);
  EXPECT_FALSE(ea.regularity().ir2_two_count_is_four);
  EXPECT_TRUE(ea.regularity().nonsingular_at_bad.at(37));

  EdsContext c(WeierstrassCurve(0, 1, 1, 0, 0), pt(0, 0));
  Apparition ca(c);
  EXPECT_TRUE(ca.regularity().regular);

  EdsContext i(WeierstrassCurve(1, -1, 1, 0, 0), pt(0, 0));
  Apparition ia(i);
  EXPECT_FALSE(ia.regularity().two_regular);
}

TEST(Apparition, PointThroughTheNodeAtABadPrime) {
  // mod 5 this is y^2 = x^3 + x^2 and P lands on the node
  const WeierstrassCurve c(0, 1, 0, 0, 25);
  EdsContext ctx(c, pt(0, 5));
  Apparition app(ctx);
  const auto sing = detail::singular_reduction_primes(c, pt(0, 5));
  EXPECT_NE(std::find(sing.begin(), sing.end(), 5u), sing.end());
  EXPECT_FALSE(app.nonsingular_at(5));
  EXPECT_TRUE(app.nonsingular_at(7));
  EXPECT_FALSE(app.regularity().regular);
  EXPECT_FALSE(app.regularity().nonsingular_at_bad.at(5));
  try {
    app.rank_prime(5);
    FAIL() << "expected SingularReduction";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularReduction);
  }
  // membership still works, by valuations
  for (std::uint64_t n = 1; n <= 40; ++n) EXPECT_EQ(app.index_divisible(n), app.index_divisible_exact(n)) << n;
}

TEST(Apparition, FastPathMatchesExactInRegularContexts) {
  EdsContext ctx(e37(), pt(0, 0));
  Apparition app(ctx);
  // exact n | D_n, oracle
  const std::vector<std::uint64_t> oracle{1, 40, 53, 63, 80};
  std::vector<std::uint64_t> fast, exact;
  for (std::uint64_t n = 1; n <= 120; ++n) {
    if (app.index_divisible(n)) fast.push_back(n);
    if (app.index_divisible(n, true)) exact.push_back(n);
  }
  EXPECT_EQ(fast, oracle);
  EXPECT_EQ(exact, oracle);
}

TEST(Apparition, IrregularContextUsesValuations) {
  // oracle: n <= 80 with n | D_n
  EdsContext ctx(WeierstrassCurve(1, -1, 1, 0, 0), pt(0, 0));
  Apparition app(ctx);
  std::vector<std::uint64_t> got;
  for (std::uint64_t n = 1; n <= 80; ++n) {
    if (app.index_divisible(n)) got.push_back(n);
  }
  EXPECT_EQ(got, (std::vector<std::uint64_t>{1, 8, 16, 32, 64, 71}));
}

TEST(Apparition, FirstTermDivisibility) {
  const RationalPoint five = RationalPoint::affine(Rational(1, 4), Rational(-5, 8));
  EdsContext ctx(e37(), five);
  Apparition app(ctx);
  const auto rec = app.rank_prime(2);
  EXPECT_EQ(rec.rank, 1u);
  EXPECT_TRUE(rec.divides_first_term);
  EXPECT_TRUE(app.rank_exact_scan(2).divides_first_term);
  EXPECT_TRUE(app.rank_composite(6).divides_first_term);
}

TEST(Apparition, ScanLimit) {
  EdsContext ctx(e37(), pt(0, 0));
  Apparition app(ctx);
  try {
    app.rank_exact_scan(53, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFound);
  }
}
