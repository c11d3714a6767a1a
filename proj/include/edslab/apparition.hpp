#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "edslab/bigint.hpp"
#include "edslab/curve.hpp"
#include "edslab/eds.hpp"
#include "edslab/error.hpp"
#include "edslab/primes.hpp"
#include "edslab/reduction.hpp"

namespace edslab {

enum class RankMethod { field_order, formal_lift, exact_scan };

inline const char* to_string(RankMethod m) {
  switch (m) {
    case RankMethod::field_order: return "field_order";
    case RankMethod::formal_lift: return "formal_lift";
    case RankMethod::exact_scan: return "exact_scan";
  }
  return "?";
}

/// r_n = min { r >= 1 : n | D_r }, with how it was obtained.
struct RankRecord {
  std::uint64_t modulus = 1;
  std::uint64_t rank = 1;
  RankMethod method = RankMethod::field_order;
  std::string certificate;
  /// Set when some prime of the modulus divides D_1.
  bool divides_first_term = false;
};

struct RegularityReport {
  bool ir1_good_at_two = false;
  bool ir2_two_count_is_four = false;
  bool ir3_rank_two_is_four = false;
  bool ir4_d2_odd = false;
  bool ir5_ord2_d4_is_one = false;
  bool two_regular = true;
  /// p -> whether P avoids the singular point mod p, for the bad primes found.
  std::map<std::uint64_t, bool> nonsingular_at_bad;
  /// False when disc had a cofactor beyond trial division; singular primes are still exact.
  bool disc_fully_factored = true;
  bool regular = false;
};

namespace detail {

/// Primes p (not dividing the denominators of P) where P reduces to a singular point:
/// exactly the common prime divisors of disc, F_x(P) and F_y(P).
inline std::vector<std::uint64_t> singular_reduction_primes(const WeierstrassCurve& curve, const RationalPoint& point) {
  const Rational a1(curve.a1()), a2(curve.a2()), a3(curve.a3()), a4(curve.a4());
  const Rational fx = a1 * point.y - 3 * point.x * point.x - 2 * a2 * point.x - a4;
  const Rational fy = 2 * point.y + a1 * point.x + a3;
  Integer g = gcd(fx.get_num(), fy.get_num());
  if (!curve.is_singular()) g = gcd(g, curve.disc());
  if (g == 0) throw Error(ErrorKind::SingularOperand, "P is the singular point over Q");
  const Integer den = point.x.get_den();
  std::vector<std::uint64_t> out;
  for (auto p32 : sieve_primes()) {
    if (g == 1) break;
    const Integer p(static_cast<unsigned long>(p32));
    if (!divides(p, g)) continue;
    while (divides(p, g)) g /= p;
    if (!divides(p, den)) out.push_back(p32);
  }
  if (g > 1) {
    if (!g.fits_ulong_p() || g.get_ui() > kSieveLimit * kSieveLimit) {
      throw Error(ErrorKind::FactorizationFailure, "singular-prime cofactor " + to_decimal(g));
    }
    if (!divides(g, den)) out.push_back(g.get_ui());
  }
  return out;
}

}  // namespace detail

/// Rank-of-apparition computations over one EDS context. Caches prime ranks.
class Apparition {
 public:
  explicit Apparition(EdsContext& ctx) : ctx_(ctx) {}

  EdsContext& context() { return ctx_; }

  /// r_p as the order of P in E_ns(F_p).
  RankRecord rank_prime(std::uint64_t p) {
    RankRecord rec;
    rec.modulus = p;
    rec.method = RankMethod::field_order;
    rec.rank = prime_rank(p);
    rec.divides_first_term = rec.rank == 1;
    rec.certificate = "order of P in E_ns(F_" + std::to_string(p) + ") of size " +
                      std::to_string(reduction(p).info.ns_order);
    return rec;
  }

  /// r_{p^e} lifted from r_p through the formal-group valuations. In the exceptional
  /// p = 2 case one exact step to D_{2 r_2} is taken first.
  RankRecord rank_prime_power(std::uint64_t p, unsigned e) {
    if (e == 0) throw Error(ErrorKind::Precondition, "exponent must be >= 1");
    RankRecord rec = rank_prime(p);
    rec.modulus = ipow(p, e);
    if (e == 1) return rec;
    rec.method = RankMethod::formal_lift;
    const std::uint64_t r = rec.rank;
    const unsigned v = ctx_.term_valuation(r, p);
    rec.certificate = "ord_" + std::to_string(p) + "(D_" + std::to_string(r) + ")=" + std::to_string(v);
    if (e <= v) return rec;
    if (p == 2 && v == 1 && ordinary_or_multiplicative_at_two()) {
      const unsigned v2 = ctx_.term_valuation(2 * r, 2);
      rec.certificate += ", ord_2(D_" + std::to_string(2 * r) + ")=" + std::to_string(v2);
      rec.rank = e <= v2 ? 2 * r : 2 * r * ipow(2, e - v2);
      return rec;
    }
    rec.rank = r * ipow(p, e - v);
    return rec;
  }

  /// r_n as the lcm of r_{p^e} over the factorization of n.
  RankRecord rank_composite(std::uint64_t n) {
    RankRecord rec;
    rec.modulus = n;
    rec.rank = 1;
    rec.method = RankMethod::formal_lift;
    for (const auto& [p, e] : n == 1 ? Factorization{} : factor(n)) {
      const RankRecord part = rank_prime_power(p, e);
      rec.rank = lcm_u64(rec.rank, part.rank);
      rec.divides_first_term = rec.divides_first_term || part.divides_first_term;
      if (!rec.certificate.empty()) rec.certificate += "; ";
      rec.certificate += "r_" + std::to_string(part.modulus) + "=" + std::to_string(part.rank);
    }
    return rec;
  }

  /// r_n straight from the definition: the first r with n | D_r.
  RankRecord rank_exact_scan(std::uint64_t n, std::uint64_t limit = 1'000'000) {
    RankRecord rec;
    rec.modulus = n;
    rec.method = RankMethod::exact_scan;
    for (std::uint64_t r = 1; r <= limit; ++r) {
      if (ctx_.term_divisible_by(r, n)) {
        rec.rank = r;
        rec.divides_first_term = r == 1 && n > 1;
        rec.certificate = std::to_string(n) + " | D_" + std::to_string(r) + ", no smaller index";
        return rec;
      }
    }
    throw Error(ErrorKind::NotFound, "no r <= " + std::to_string(limit) + " with " + std::to_string(n) + " | D_r");
  }

  const RegularityReport& regularity() {
    if (!regularity_) regularity_ = compute_regularity();
    return *regularity_;
  }

  /// n in S(D). Regular contexts use "p | n implies r_p | n"; others compare
  /// ord_p(D_n) with ord_p(n) directly.
  bool index_divisible(std::uint64_t n, bool force_exact = false) {
    if (n == 0) throw Error(ErrorKind::Precondition, "index must be >= 1");
    if (n == 1) return true;
    if (force_exact || !regularity().regular || ctx_.normalized()) return index_divisible_exact(n);
    for (std::uint64_t p : prime_divisors(n)) {
      if (n % prime_rank(p) != 0) return false;
    }
    return true;
  }

  bool index_divisible_exact(std::uint64_t n) { return ctx_.term_divisible_by(n, n); }

  const ReducedCurve& reduction(std::uint64_t p) {
    auto it = reductions_.find(p);
    if (it == reductions_.end()) it = reductions_.emplace(p, reduce_mod_p(ctx_.curve(), p)).first;
    return it->second;
  }

  bool nonsingular_at(std::uint64_t p) { return !reduce_point(reduction(p), ctx_.point()).singular; }

  /// Installs ranks computed elsewhere (e.g. by a parallel sweep).
  void seed_prime_rank(std::uint64_t p, std::uint64_t r) { prime_ranks_.emplace(p, r); }

 private:
  std::uint64_t prime_rank(std::uint64_t p) {
    if (auto it = prime_ranks_.find(p); it != prime_ranks_.end()) return it->second;
    const ReducedCurve& red = reduction(p);
    const ModPoint pbar = reduce_point(red, ctx_.point());
    if (pbar.singular) {
      throw Error(ErrorKind::SingularReduction, "P reduces to the singular point mod " + std::to_string(p));
    }
    const std::uint64_t r = order_in_group(red.curve, pbar, red.info.ns_order);
    prime_ranks_.emplace(p, r);
    return r;
  }

  bool ordinary_or_multiplicative_at_two() {
    const auto& info = reduction(2).info;
    return (info.kind == ReductionKind::good && info.ns_order % 2 == 0) || is_multiplicative(info.kind);
  }

  RegularityReport compute_regularity() {
    RegularityReport rep;
    const WeierstrassCurve& curve = ctx_.curve();
    const auto& at_two = reduction(2).info;
    rep.ir1_good_at_two = at_two.kind == ReductionKind::good;
    // Affine points on the reduced cubic plus O; the singular point counts here.
    const std::uint64_t points_mod_two = at_two.ns_order + (rep.ir1_good_at_two ? 0 : 1);
    rep.ir2_two_count_is_four = points_mod_two == 4;
    rep.ir3_rank_two_is_four = rank_exact_scan(2, 64).rank == 4;
    rep.ir4_d2_odd = ctx_.term_valuation(2, 2) == 0;
    rep.ir5_ord2_d4_is_one = ctx_.term_valuation(4, 2) == 1;
    rep.two_regular = !(rep.ir1_good_at_two && rep.ir2_two_count_is_four && rep.ir3_rank_two_is_four &&
                        rep.ir4_d2_odd && rep.ir5_ord2_d4_is_one);

    const auto singular = detail::singular_reduction_primes(curve, ctx_.point());
    if (!curve.is_singular()) {
      Integer rest = abs_value(curve.disc());
      for (auto p32 : sieve_primes()) {
        if (rest == 1) break;
        const Integer p(static_cast<unsigned long>(p32));
        if (!divides(p, rest)) continue;
        while (divides(p, rest)) rest /= p;
        rep.nonsingular_at_bad[p32] = true;
      }
      if (rest > 1) {
        if (rest.fits_ulong_p() && rest.get_ui() <= kSieveLimit * kSieveLimit) {
          rep.nonsingular_at_bad[rest.get_ui()] = true;
        } else {
          rep.disc_fully_factored = false;
        }
      }
    }
    for (std::uint64_t p : singular) rep.nonsingular_at_bad[p] = false;
    bool all_nonsingular = true;
    for (const auto& [p, ok] : rep.nonsingular_at_bad) all_nonsingular = all_nonsingular && ok;
    rep.regular = rep.two_regular && all_nonsingular;
    return rep;
  }

  EdsContext& ctx_;
  std::map<std::uint64_t, std::uint64_t> prime_ranks_;
  std::map<std::uint64_t, ReducedCurve> reductions_;
  std::optional<RegularityReport> regularity_;
};

}  // namespace edslab
