#include <gtest/gtest.h>

#include <numeric>

#include "edslab/eds.hpp"

using namespace edslab;

namespace {

WeierstrassCurve e37() { return WeierstrassCurve(0, 0, 1, -1, 0); }
RationalPoint origin() { return RationalPoint::affine(0, 0); }

std::vector<Integer> ints(std::initializer_list<const char*> xs) {
  std::vector<Integer> out;
  for (const char* s : xs) out.emplace_back(s);
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

TEST(Eds, FirstTermsOnE37) {
  EdsContext ctx(e37(), origin());
  EXPECT_EQ(ctx.terms(21), ints({"1", "1", "1", "1", "2", "1", "3", "5", "7", "4", "23", "29", "59", "129", "314", "65",
                                 "1529", "3689", "8209", "16264", "83313"}));
  EXPECT_EQ(ctx.term(40) / 40, Integer("13526278251270010"));
}

TEST(Eds, TermsDoNotDependOnEvaluationOrder) {
  EdsContext forward(e37(), origin()), sparse(e37(), origin());
  const auto all = forward.terms(64);
  for (std::uint64_t n : {64, 32, 7, 48, 1, 33}) EXPECT_EQ(sparse.term(n), all[n - 1]) << n;
}

TEST(Eds, StrongDivisibility) {
  EdsContext ctx(e37(), origin());
  const auto d = ctx.terms(60);
  for (std::uint64_t m = 1; m <= 60; ++m) {
    for (std::uint64_t n = 1; n <= 60; ++n) {
      EXPECT_EQ(gcd(d[m - 1], d[n - 1]), d[std::gcd(m, n) - 1]) << m << "," << n;
    }
  }
}

TEST(Eds, WardTermsAgreeAtGoodPrimes) {
  EdsContext ctx(e37(), origin());
  const auto w = ward_exact(ctx.curve(), ctx.point(), 50);
  for (std::uint64_t n = 1; n <= 50; ++n) {
    const Integer& d = ctx.term(n);
    ASSERT_NE(w[n - 1], 0);
    EXPECT_TRUE(divides(d, w[n - 1])) << n;
    EXPECT_EQ(w[n - 1], ward_term_exact(ctx.curve(), ctx.point(), n)) << n;
    for (std::uint64_t p : {2, 3, 5}) {
      EXPECT_EQ(valuation(d, p), valuation(w[n - 1], p)) << "n=" << n << " p=" << p;
      EXPECT_EQ(ctx.term_valuation(n, p), valuation(d, p));
    }
  }
}

TEST(Eds, WardModMatchesExactReduction) {
  // the second curve has W_2 = 23, so moduli with 23 take the split CRT path
  const WeierstrassCurve other(2, 1, 1, 7, 4);
  const RationalPoint q = RationalPoint::affine(4, 7);
  for (const auto& [c, p] : {std::pair{e37(), origin()}, std::pair{other, q}}) {
    const auto w = ward_exact(c, p, 40);
    for (const Integer m : {Integer(2), Integer(36), Integer(37), Integer(23 * 23 * 10), Integer("340282366920938463463374607431768211457")}) {
      for (std::uint64_t n = 1; n <= 40; ++n) EXPECT_EQ(ward_mod(c, p, n, m), mod_floor(w[n - 1], m)) << n;
    }
  }
}

TEST(Eds, NonIntegralPoint) {
  // 5P = (1/4, -5/8); its EDS is D_5n, oracle values
  const RationalPoint five = RationalPoint::affine(Rational(1, 4), Rational(-5, 8));
  EdsContext ctx(e37(), five);
  EXPECT_FALSE(ctx.ward_available());
  const auto want = ints({"2", "4", "314", "16264", "7869898", "7911171596", "32606721084786", "541051130050800400",
                          "23385756731869683322514", "5423908604123397486016003604"});
  EXPECT_EQ(ctx.terms(10), want);
  EdsContext base(e37(), origin());
  for (std::uint64_t n = 1; n <= 10; ++n) EXPECT_EQ(ctx.term(n), base.term(5 * n));
  EXPECT_EQ(ctx.term_valuation(2, 2), 2u);
  EXPECT_TRUE(ctx.term_divisible_by(3, 157));

  auto norm = ctx.normalize();
  EXPECT_TRUE(norm.normalized());
  for (std::uint64_t n = 1; n <= 10; ++n) EXPECT_EQ(norm.term(n), want[n - 1] / 2);
  EXPECT_EQ(norm.term_valuation(2, 2), 1u);
}

TEST(Eds, TermCap) {
  EdsContext capped(e37(), origin(), EdsOptions{50, false});
  EXPECT_NO_THROW(capped.term(50));
  EXPECT_EQ(kind_of([&] { capped.term(51); }), ErrorKind::TermCapExceeded);
  EXPECT_EQ(kind_of([] { ward_term_exact(e37(), origin(), 51, EdsOptions{50, false}); }), ErrorKind::TermCapExceeded);
  EdsContext lifted(e37(), origin(), EdsOptions{50, true});
  EXPECT_NO_THROW(lifted.term(51));
  // residues never materialize big terms, so the cap does not apply
  EXPECT_NO_THROW(ward_mod(e37(), origin(), 1'000'000, Integer(1009), EdsOptions{50, false}));
}

TEST(Eds, RejectsBadBasePoints) {
  EXPECT_EQ(kind_of([] { EdsContext(e37(), RationalPoint::at_infinity()); }), ErrorKind::TorsionPoint);
  EXPECT_EQ(kind_of([] { EdsContext(WeierstrassCurve(0, 0, 0, 0, 1), RationalPoint::affine(2, 3)); }),
            ErrorKind::TorsionPoint);
  EXPECT_EQ(kind_of([] { EdsContext(e37(), RationalPoint::affine(1, 1)); }), ErrorKind::Precondition);
  const WeierstrassCurve nodal(3, 2, 3, 1, 0, true);
  EXPECT_EQ(kind_of([&] { EdsContext(nodal, RationalPoint::affine(-1, 0)); }), ErrorKind::SingularOperand);
  EdsContext ctx(e37(), origin());
  EXPECT_EQ(kind_of([&] { ctx.term(0); }), ErrorKind::Precondition);
}

TEST(Eds, FormalGroupValuations) {
  // strict only in the 2-adic exceptional case
  struct Case {
    WeierstrassCurve c;
    RationalPoint p;
  };
  const Case cases[] = {{e37(), origin()},
                        {WeierstrassCurve(1, 0, 0, -2, 1), RationalPoint::affine(1, 0)},
                        {WeierstrassCurve(2, 1, 1, 7, 4), RationalPoint::affine(4, 7)}};
  int checked = 0;
  for (const auto& [c, pt] : cases) {
    EdsContext ctx(c, pt);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      for (std::uint64_t n = 1; n <= 12; ++n) {
        if (ctx.term_valuation(n, p) == 0) continue;
        for (std::uint64_t m = 1; m <= 6; ++m) {
          const auto r = ctx.check_formal_group(p, n, m);
          EXPECT_TRUE(r.consistent()) << c.literal() << " p=" << p << " n=" << n << " m=" << m;
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 50);
  EdsContext irr(WeierstrassCurve(1, 0, 0, -2, 1), RationalPoint::affine(1, 0));
  const auto r = irr.check_formal_group(2, 4, 2);
  EXPECT_TRUE(r.strict && r.exceptional());
  EXPECT_EQ(kind_of([&] { irr.check_formal_group(2, 1, 2); }), ErrorKind::Precondition);
}

TEST(Eds, GrowthSettlesNearTheHeight) {
  EdsContext ctx(e37(), origin());
  const auto g = ctx.growth_diagnostic(200);
  // log D_n / n^2 tends to half the height 0.05111 of (0,0) in the log H(x) normalization
  EXPECT_NEAR(g.back(), 0.05111 / 2, 5e-4);
}

TEST(Eds, CrtPair) {
  EXPECT_EQ(detail::crt_pair(2, 3, 3, 5), 8);
  EXPECT_EQ(kind_of([] { detail::crt_pair(1, 4, 1, 6); }), ErrorKind::Precondition);
}
