#include <gtest/gtest.h>

#include <map>

#include "edslab/curve.hpp"
#include "edslab/primes.hpp"
#include "edslab/reduction.hpp"

using namespace edslab;

namespace {

WeierstrassCurve e37() { return WeierstrassCurve(0, 0, 1, -1, 0); }
RationalPoint pt(long x, long y) { return RationalPoint::affine(Rational(x), Rational(y)); }

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

TEST(Curve, InvariantsOfE37) {
  const auto e = e37();
  EXPECT_EQ(e.b2(), 0);
  EXPECT_EQ(e.b4(), -2);
  EXPECT_EQ(e.b6(), 1);
  EXPECT_EQ(e.b8(), -1);
  EXPECT_EQ(e.c4(), 48);
  EXPECT_EQ(e.c6(), -216);
  EXPECT_EQ(e.disc(), 37);
  EXPECT_EQ(*e.j_invariant(), Rational(110592, 37));
  // 1728 disc = c4^3 - c6^2 holds for any model
  const WeierstrassCurve odd(2, -3, 5, 7, -11);
  EXPECT_EQ(1728 * odd.disc(), odd.c4() * odd.c4() * odd.c4() - odd.c6() * odd.c6());
}

TEST(Curve, SingularCubicNeedsOptIn) {
  EXPECT_EQ(kind_of([] { WeierstrassCurve(3, 2, 3, 1, 0); }), ErrorKind::Precondition);
  const WeierstrassCurve nodal(3, 2, 3, 1, 0, true);
  EXPECT_TRUE(nodal.is_singular());
  EXPECT_FALSE(nodal.j_invariant().has_value());
  const auto [x, y] = nodal.singular_point();
  EXPECT_EQ(x, -1);
  EXPECT_EQ(y, 0);
  const auto node = pt(-1, 0);
  EXPECT_TRUE(is_singular_point(nodal, node));
  EXPECT_EQ(kind_of([&] { add(nodal, node, pt(0, 0)); }), ErrorKind::SingularOperand);
  EXPECT_EQ(kind_of([] { e37().singular_point(); }), ErrorKind::Precondition);
}

TEST(Curve, MultiplesOfTheGenerator) {
  const auto e = e37();
  const auto p = pt(0, 0);
  EXPECT_EQ(multiply(e, p, 2), pt(1, 0));
  EXPECT_EQ(multiply(e, p, 3), pt(-1, -1));
  EXPECT_EQ(multiply(e, p, 4), pt(2, -3));
  EXPECT_EQ(multiply(e, p, 5), RationalPoint::affine(Rational(1, 4), Rational(-5, 8)));
  EXPECT_EQ(multiply(e, p, 0), RationalPoint::at_infinity());
  EXPECT_EQ(multiply(e, p, -3), negate(e, multiply(e, p, 3)));
  EXPECT_TRUE(is_nontorsion(e, p));
}

TEST(Curve, GroupLawIsAdditiveInTheMultiplier) {
  const auto e = e37();
  const auto p = pt(0, 0);
  std::map<int, RationalPoint> mult;
  for (int k = -12; k <= 12; ++k) mult[k] = multiply(e, p, k);
  for (int m = -6; m <= 6; ++m) {
    for (int n = -6; n <= 6; ++n) {
      const auto sum = add(e, mult[m], mult[n]);
      EXPECT_EQ(sum, mult[m + n]) << m << "+" << n;
      EXPECT_TRUE(on_curve(e, sum));
    }
  }
}

TEST(Curve, TorsionPointIsDetected) {
  const WeierstrassCurve c(0, 0, 0, 0, 1);
  const auto q = pt(2, 3);
  EXPECT_FALSE(is_nontorsion(c, q));
  EXPECT_EQ(multiply(c, q, 6), RationalPoint::at_infinity());
  EXPECT_NE(multiply(c, q, 3), RationalPoint::at_infinity());
}

TEST(Curve, MinimalityHeuristic) {
  EXPECT_EQ(minimality_heuristic(e37()), Minimality::minimal_certified);
  // E37 rescaled by u = 5: a_i -> 5^i a_i
  const WeierstrassCurve scaled(0, 0, 125, -625, 0);
  EXPECT_EQ(scaled.disc(), 37 * pow_int(5, 12));
  EXPECT_EQ(minimality_heuristic(scaled), Minimality::possibly_nonminimal);
}

TEST(Reduction, PointCountsMatchEnumeration) {
  // full enumeration, tests/oracles/eds_oracle.py
  const std::map<std::uint64_t, std::uint64_t> oracle{
      {2, 5},   {3, 7},   {5, 8},   {7, 9},   {11, 17}, {13, 16}, {17, 18}, {19, 20},
      {23, 22}, {29, 24}, {31, 36}, {41, 51}, {43, 42}, {47, 57}, {53, 53}, {59, 52}};
  for (const auto& [p, n] : oracle) EXPECT_EQ(count_points(e37(), p), n) << "p=" << p;
}

TEST(Reduction, HasseBoundAndOrderDividesCount) {
  const auto e = e37();
  for (auto p : primes_up_to(2000)) {
    if (p == 37) continue;
    const auto n = count_points(e, p);
    const long long t = static_cast<long long>(p) + 1 - static_cast<long long>(n);
    EXPECT_LT(static_cast<unsigned long long>(t * t), 4 * p) << p;
    EXPECT_EQ(n % point_order_mod_p(e, pt(0, 0), p), 0u) << p;
  }
}

TEST(Reduction, Types) {
  EXPECT_EQ(reduce_mod_p(e37(), 2).info.kind, ReductionKind::good);
  const auto at37 = reduce_mod_p(e37(), 37).info;
  EXPECT_TRUE(is_multiplicative(at37.kind));
  EXPECT_TRUE(at37.singular_point.has_value());
  const WeierstrassCurve nodal(3, 2, 3, 1, 0, true);
  // tangents at the node are defined over F_p exactly when 5 is a square mod p
  EXPECT_EQ(reduce_mod_p(nodal, 11).info.kind, ReductionKind::split_multiplicative);
  EXPECT_EQ(reduce_mod_p(nodal, 11).info.ns_order, 10u);
  EXPECT_EQ(reduce_mod_p(nodal, 7).info.kind, ReductionKind::nonsplit_multiplicative);
  EXPECT_EQ(reduce_mod_p(nodal, 7).info.ns_order, 8u);
  EXPECT_EQ(reduce_mod_p(nodal, 5).info.kind, ReductionKind::additive);
  EXPECT_EQ(reduce_mod_p(nodal, 5).info.ns_order, 5u);
}

TEST(Reduction, DenominatorPrimesSendPointToInfinity) {
  const auto e = e37();
  const auto five_p = multiply(e, pt(0, 0), 5);
  EXPECT_TRUE(reduce_point(reduce_mod_p(e, 2), five_p).identity);
  EXPECT_FALSE(reduce_point(reduce_mod_p(e, 3), five_p).identity);
  EXPECT_EQ(point_order_mod_p(e, pt(0, 0), 2), 5u);
}

TEST(Primes, Factorization) {
  const auto f = factor(360);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].prime, 2u);
  EXPECT_EQ(f[0].exponent, 3u);
  EXPECT_EQ(f[2].prime, 5u);
  EXPECT_EQ(divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(factor(999983ULL * 1000003ULL).size(), 2u);
  EXPECT_EQ(kind_of([] { factor(1000003ULL * 1000033ULL); }), ErrorKind::FactorizationFailure);
  EXPECT_EQ(kind_of([] { factor(0); }), ErrorKind::ZeroArgument);
  EXPECT_EQ(kind_of([] { valuation(Integer(0), 3); }), ErrorKind::ZeroArgument);
  EXPECT_EQ(valuation(Integer(-162), 3), 4u);
}
