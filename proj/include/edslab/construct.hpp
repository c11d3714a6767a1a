#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "edslab/apparition.hpp"
#include "edslab/bigint.hpp"
#include "edslab/curve.hpp"
#include "edslab/eds.hpp"
#include "edslab/error.hpp"
#include "edslab/primes.hpp"
#include "edslab/reduction.hpp"

namespace edslab {

/// Ask for #E(F_p) = k n with a point of exact order n.
struct PrescribedDatum {
  std::uint64_t p = 2;
  std::uint64_t n = 1;
  std::uint64_t k = 1;

  std::uint64_t group_order() const { return k * n; }
  bool hasse_feasible() const {
    const long long trace = static_cast<long long>(p) + 1 - static_cast<long long>(k * n);
    return static_cast<unsigned long long>(trace * trace) < 4 * p;
  }
  friend bool operator==(const PrescribedDatum&, const PrescribedDatum&) = default;
};

struct FiniteFieldHit {
  ModCurve curve;
  ModPoint point;
  std::uint64_t group_order = 0;
  std::uint64_t point_order = 0;
};

/// First curve in lexicographic coefficient order with the requested group order,
/// and its first point (by x, then y) of the requested order. Long Weierstrass form
/// for p = 2, 3; y^2 = x^3 + a4 x + a6 otherwise.
inline FiniteFieldHit search_curve_mod_p(std::uint64_t p, std::uint64_t group_order, std::uint64_t point_order) {
  if (!is_prime(p)) throw Error(ErrorKind::Precondition, std::to_string(p) + " is not prime");
  if (point_order == 0 || group_order % point_order != 0) {
    throw Error(ErrorKind::Precondition, "point order must divide the group order");
  }
  const PrescribedDatum probe{p, point_order, group_order / point_order};
  if (!probe.hasse_feasible()) {
    throw Error(ErrorKind::Precondition, "group order " + std::to_string(group_order) + " violates the Hasse bound at p=" +
                                             std::to_string(p));
  }
  auto try_curve = [&](const ModCurve& c, FiniteFieldHit& hit) {
    if (c.disc() == 0 || detail::count_nonsingular(c) != group_order) return false;
    for (std::uint64_t x = 0; x < p; ++x) {
      for (std::uint64_t y = 0; y < p; ++y) {
        if (c.evaluate(x, y) != 0) continue;
        const ModPoint pt = ModPoint::affine(p, x, y);
        if (order_in_group(c, pt, group_order) == point_order) {
          hit = {c, pt, group_order, point_order};
          return true;
        }
      }
    }
    return false;
  };
  FiniteFieldHit hit;
  if (p <= 3) {
    for (std::uint64_t a1 = 0; a1 < p; ++a1)
      for (std::uint64_t a2 = 0; a2 < p; ++a2)
        for (std::uint64_t a3 = 0; a3 < p; ++a3)
          for (std::uint64_t a4 = 0; a4 < p; ++a4)
            for (std::uint64_t a6 = 0; a6 < p; ++a6)
              if (try_curve({p, a1, a2, a3, a4, a6}, hit)) return hit;
  } else {
    for (std::uint64_t a4 = 0; a4 < p; ++a4)
      for (std::uint64_t a6 = 0; a6 < p; ++a6)
        if (try_curve({p, 0, 0, 0, a4, a6}, hit)) return hit;
  }
  throw Error(ErrorKind::NotFound, "no curve mod " + std::to_string(p) + " with #E=" + std::to_string(group_order) +
                                       " and a point of order " + std::to_string(point_order));
}

/// Substitutes x -> x + x0, y -> y + y0 so the point lands on (0, 0).
inline ModCurve translate_point_to_origin(const ModCurve& c, const ModPoint& pt) {
  if (pt.identity) throw Error(ErrorKind::Precondition, "cannot move the identity to the origin");
  using namespace modp;
  const std::uint64_t p = c.p, r = pt.x, t = pt.y;
  ModCurve out = c;
  out.a2 = add(c.a2, mul(3 % p, r, p), p);
  out.a3 = add(add(c.a3, mul(r, c.a1, p), p), mul(2 % p, t, p), p);
  out.a4 = sub(add(add(c.a4, mul(mul(2 % p, r, p), c.a2, p), p), mul(3 % p, mul(r, r, p), p), p), mul(t, c.a1, p), p);
  out.a6 = 0;
  if (c.evaluate(r, t) != 0) throw Error(ErrorKind::Precondition, "point is not on the curve");
  return out;
}

struct PrimeCheck {
  std::uint64_t p = 0;
  bool good_reduction = false;
  std::uint64_t group_order = 0;
  std::uint64_t point_order = 0;
  bool matches = false;
};

struct ConstructionResult {
  WeierstrassCurve curve;
  RationalPoint point;
  std::vector<PrescribedDatum> data;
  std::vector<PrimeCheck> checks;
  bool nontorsion = false;
};

struct ConstructionReport {
  std::vector<PrimeCheck> checks;
  bool nontorsion = false;
  /// d = lcm of all p_i and n_i; the arrow check runs when every prime of d is some p_i.
  std::uint64_t arrow_target = 0;
  bool arrow_check_applicable = false;
  bool target_in_set = false;
  bool no_intermediate = false;
  bool ok = false;
  std::string failure;
};

inline std::vector<PrimeCheck> check_primes(const WeierstrassCurve& curve, const RationalPoint& point,
                                            const std::vector<PrescribedDatum>& data) {
  std::vector<PrimeCheck> out;
  for (const auto& datum : data) {
    PrimeCheck c;
    c.p = datum.p;
    const ReducedCurve red = reduce_mod_p(curve, datum.p);
    c.good_reduction = red.info.kind == ReductionKind::good;
    c.group_order = red.info.ns_order;
    const ModPoint pbar = reduce_point(red, point);
    c.point_order = pbar.singular ? 0 : order_in_group(red.curve, pbar, red.info.ns_order);
    c.matches = c.good_reduction && c.group_order == datum.group_order() && c.point_order == datum.n;
    out.push_back(c);
  }
  return out;
}

/// Recomputes everything a construction claims. The arrow (1 -> d) is checked from
/// residues of the Ward sequence: d | D_d and no 1 < k < d with k | d has k | D_k.
inline ConstructionReport verify_construction(const WeierstrassCurve& curve, const RationalPoint& point,
                                              const std::vector<PrescribedDatum>& data) {
  ConstructionReport rep;
  rep.checks = check_primes(curve, point, data);
  rep.nontorsion = is_nontorsion(curve, point);
  rep.ok = rep.nontorsion;
  if (!rep.nontorsion) rep.failure = "point is torsion";
  for (const auto& c : rep.checks) {
    if (!c.matches && rep.ok) {
      rep.ok = false;
      rep.failure = "prescription fails at p=" + std::to_string(c.p) + ": #E=" + std::to_string(c.group_order) +
                    ", order " + std::to_string(c.point_order);
    }
  }
  std::uint64_t d = 1;
  std::set<std::uint64_t> primes;
  for (const auto& datum : data) {
    d = lcm_u64(lcm_u64(d, datum.p), datum.n);
    primes.insert(datum.p);
  }
  rep.arrow_target = d;
  rep.arrow_check_applicable = d > 1;
  for (auto q : prime_divisors(d)) rep.arrow_check_applicable = rep.arrow_check_applicable && primes.count(q);
  if (rep.arrow_check_applicable && rep.nontorsion) {
    EdsContext ctx(curve, point);
    rep.target_in_set = ctx.term_divisible_by(d, d);
    rep.no_intermediate = true;
    for (auto k : divisors(d)) {
      if (k == 1 || k == d) continue;
      if (ctx.term_divisible_by(k, k)) {
        rep.no_intermediate = false;
        break;
      }
    }
  }
  return rep;
}

inline ConstructionReport verify_construction(const ConstructionResult& result) {
  return verify_construction(result.curve, result.point, result.data);
}

inline void require_verified(const ConstructionReport& rep) {
  if (!rep.ok) throw Error(ErrorKind::VerificationFailed, rep.failure);
}

/// Finds E_i mod p_i, moves each point to (0, 0) and glues the coefficients by CRT.
/// Representatives lie in [0, M) with M = prod p_i, or in (-M/2, M/2] when symmetric.
inline ConstructionResult crt_curve(const std::vector<PrescribedDatum>& data, bool symmetric = false) {
  if (data.empty()) throw Error(ErrorKind::Precondition, "no prescribed data");
  std::set<std::uint64_t> seen;
  for (const auto& d : data) {
    if (!seen.insert(d.p).second) throw Error(ErrorKind::Precondition, "repeated prime " + std::to_string(d.p));
  }
  std::array<Integer, 5> coeff{0, 0, 0, 0, 0};
  Integer modulus = 1;
  for (const auto& datum : data) {
    const FiniteFieldHit hit = search_curve_mod_p(datum.p, datum.group_order(), datum.n);
    const ModCurve c = translate_point_to_origin(hit.curve, hit.point);
    const std::array<std::uint64_t, 5> local{c.a1, c.a2, c.a3, c.a4, c.a6};
    const Integer p(static_cast<unsigned long>(datum.p));
    for (std::size_t i = 0; i < 5; ++i) {
      coeff[i] = detail::crt_pair(coeff[i], modulus, Integer(static_cast<unsigned long>(local[i])), p);
    }
    modulus *= p;
  }
  if (symmetric) {
    for (auto& a : coeff) {
      if (2 * a > modulus) a -= modulus;
    }
  }
  ConstructionResult result{WeierstrassCurve::from_array(coeff), RationalPoint::affine(0, 0), data, {}, false};
  const ConstructionReport rep = verify_construction(result);
  result.checks = rep.checks;
  result.nontorsion = rep.nontorsion;
  require_verified(rep);
  return result;
}

/// Lines "p n k"; blank lines and '#' comments are skipped.
inline std::vector<PrescribedDatum> parse_prescription(std::istream& in) {
  std::vector<PrescribedDatum> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    PrescribedDatum d;
    std::string extra;
    try {
      d.p = std::stoull(first);
      std::string n, k;
      if (!(fields >> n >> k) || (fields >> extra)) throw std::invalid_argument("field count");
      d.n = std::stoull(n);
      d.k = std::stoull(k);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'p n k'");
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace edslab
