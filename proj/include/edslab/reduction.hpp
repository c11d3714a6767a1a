#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edslab/bigint.hpp"
#include "edslab/curve.hpp"
#include "edslab/error.hpp"
#include "edslab/primes.hpp"

namespace edslab {

// Residue arithmetic for word-sized moduli.
namespace modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return a >= b ? a - b : a + m - b; }
inline std::uint64_t neg(std::uint64_t a, std::uint64_t m) { return a == 0 ? 0 : m - a; }

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mul(r, base, m);
    base = mul(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// Inverse modulo a prime; a must be non-zero mod p.
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

inline std::uint64_t reduce(const Integer& x, std::uint64_t m) { return mod_u64(x, m); }

/// Reduction of a p-integral rational; nullopt when p divides the denominator.
inline std::optional<std::uint64_t> reduce(const Rational& q, std::uint64_t p) {
  const std::uint64_t den = mod_u64(q.get_den(), p);
  if (den == 0) return std::nullopt;
  return mul(mod_u64(q.get_num(), p), inv(den, p), p);
}

}  // namespace modp

/// Weierstrass coefficients reduced modulo a prime p.
struct ModCurve {
  std::uint64_t p = 2;
  std::uint64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  static ModCurve reduce(const WeierstrassCurve& curve, std::uint64_t p) {
    return {p, modp::reduce(curve.a1(), p), modp::reduce(curve.a2(), p), modp::reduce(curve.a3(), p),
            modp::reduce(curve.a4(), p), modp::reduce(curve.a6(), p)};
  }

  std::uint64_t evaluate(std::uint64_t x, std::uint64_t y) const {
    using namespace modp;
    const std::uint64_t lhs = add(add(mul(y, y, p), mul(mul(a1, x, p), y, p), p), mul(a3, y, p), p);
    const std::uint64_t x2 = mul(x, x, p);
    const std::uint64_t rhs = add(add(add(mul(x2, x, p), mul(a2, x2, p), p), mul(a4, x, p), p), a6, p);
    return sub(lhs, rhs, p);
  }

  /// Partial derivatives of F = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6.
  std::uint64_t dfdx(std::uint64_t x, std::uint64_t y) const {
    using namespace modp;
    const std::uint64_t t = add(add(mul(3 % p, mul(x, x, p), p), mul(mul(2 % p, a2, p), x, p), p), a4, p);
    return sub(mul(a1, y, p), t, p);
  }
  std::uint64_t dfdy(std::uint64_t x, std::uint64_t y) const {
    using namespace modp;
    return add(add(mul(2 % p, y, p), mul(a1, x, p), p), a3, p);
  }

  std::uint64_t disc() const {
    using namespace modp;
    const std::uint64_t b2 = add(mul(a1, a1, p), mul(4 % p, a2, p), p);
    const std::uint64_t b4 = add(mul(2 % p, a4, p), mul(a1, a3, p), p);
    const std::uint64_t b6 = add(mul(a3, a3, p), mul(4 % p, a6, p), p);
    std::uint64_t b8 = add(mul(mul(a1, a1, p), a6, p), mul(mul(4 % p, a2, p), a6, p), p);
    b8 = sub(b8, mul(mul(a1, a3, p), a4, p), p);
    b8 = add(b8, mul(mul(a2, a3, p), a3, p), p);
    b8 = sub(b8, mul(a4, a4, p), p);
    std::uint64_t d = neg(mul(mul(b2, b2, p), b8, p), p);
    d = sub(d, mul(8 % p, mul(mul(b4, b4, p), b4, p), p), p);
    d = sub(d, mul(27 % p, mul(b6, b6, p), p), p);
    d = add(d, mul(9 % p, mul(mul(b2, b4, p), b6, p), p), p);
    return d;
  }

  friend bool operator==(const ModCurve&, const ModCurve&) = default;
};

struct ModPoint {
  std::uint64_t p = 2;
  bool identity = true;
  std::uint64_t x = 0, y = 0;
  bool singular = false;

  static ModPoint at_infinity(std::uint64_t p) { return {p, true, 0, 0, false}; }
  static ModPoint affine(std::uint64_t p, std::uint64_t x, std::uint64_t y) { return {p, false, x, y, false}; }

  friend bool operator==(const ModPoint& l, const ModPoint& r) {
    if (l.identity || r.identity) return l.identity == r.identity;
    return l.x == r.x && l.y == r.y;
  }
};

enum class ReductionKind { good, split_multiplicative, nonsplit_multiplicative, additive };

inline const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::good: return "good";
    case ReductionKind::split_multiplicative: return "split_multiplicative";
    case ReductionKind::nonsplit_multiplicative: return "nonsplit_multiplicative";
    case ReductionKind::additive: return "additive";
  }
  return "?";
}

inline bool is_multiplicative(ReductionKind k) {
  return k == ReductionKind::split_multiplicative || k == ReductionKind::nonsplit_multiplicative;
}

struct ReductionInfo {
  std::uint64_t p = 2;
  ReductionKind kind = ReductionKind::good;
  /// #E_ns(F_p); equals #E(F_p) for good reduction.
  std::uint64_t ns_order = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> singular_point;
};

struct ReducedCurve {
  ModCurve curve;
  ReductionInfo info;
};

// Group law on E(F_p), or E_ns(F_p) when the reduced curve is singular.
inline ModPoint mod_negate(const ModCurve& c, const ModPoint& p) {
  if (p.identity) return p;
  using namespace modp;
  const std::uint64_t y = sub(sub(neg(p.y, c.p), mul(c.a1, p.x, c.p), c.p), c.a3, c.p);
  return ModPoint::affine(c.p, p.x, y);
}

inline ModPoint mod_add(const ModCurve& c, const ModPoint& p, const ModPoint& q) {
  if (p.identity) return q;
  if (q.identity) return p;
  using namespace modp;
  const std::uint64_t m = c.p;
  std::uint64_t lambda;
  if (p.x == q.x) {
    const std::uint64_t denom = add(add(add(p.y, q.y, m), mul(c.a1, q.x, m), m), c.a3, m);
    if (denom == 0) return ModPoint::at_infinity(m);
    std::uint64_t num = add(mul(3 % m, mul(p.x, p.x, m), m), mul(mul(2 % m, c.a2, m), p.x, m), m);
    num = sub(add(num, c.a4, m), mul(c.a1, p.y, m), m);
    lambda = mul(num, inv(denom, m), m);
  } else {
    lambda = mul(sub(q.y, p.y, m), inv(sub(q.x, p.x, m), m), m);
  }
  const std::uint64_t nu = sub(p.y, mul(lambda, p.x, m), m);
  std::uint64_t x3 = add(mul(lambda, lambda, m), mul(c.a1, lambda, m), m);
  x3 = sub(sub(sub(x3, c.a2, m), p.x, m), q.x, m);
  const std::uint64_t y3 = sub(sub(neg(mul(add(lambda, c.a1, m), x3, m), m), nu, m), c.a3, m);
  return ModPoint::affine(m, x3, y3);
}

inline ModPoint mod_multiply(const ModCurve& c, const ModPoint& p, std::uint64_t n) {
  ModPoint result = ModPoint::at_infinity(c.p);
  ModPoint base = p;
  while (n > 0) {
    if (n & 1) result = mod_add(c, result, base);
    n >>= 1;
    if (n > 0) base = mod_add(c, base, base);
  }
  return result;
}

namespace detail {

/// Singular point of a reduced cubic by direct computation. For p <= 3 all p^2
/// candidates are tried; otherwise y is forced by F_y = 0.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> find_singular_point(const ModCurve& c) {
  const std::uint64_t p = c.p;
  if (p <= 3) {
    for (std::uint64_t x = 0; x < p; ++x)
      for (std::uint64_t y = 0; y < p; ++y)
        if (c.evaluate(x, y) == 0 && c.dfdx(x, y) == 0 && c.dfdy(x, y) == 0) return std::pair{x, y};
    return std::nullopt;
  }
  const std::uint64_t half = modp::inv(2, p);
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t y = modp::mul(modp::neg(modp::add(modp::mul(c.a1, x, p), c.a3, p), p), half, p);
    if (c.evaluate(x, y) == 0 && c.dfdx(x, y) == 0) return std::pair{x, y};
  }
  return std::nullopt;
}

/// #E(F_p) for a non-singular reduction. Odd p: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6,
/// summed with a quadratic-character table. p = 2: full enumeration.
inline std::uint64_t count_nonsingular(const ModCurve& c) {
  const std::uint64_t p = c.p;
  if (p == 2) {
    std::uint64_t n = 1;
    for (std::uint64_t x = 0; x < 2; ++x)
      for (std::uint64_t y = 0; y < 2; ++y)
        if (c.evaluate(x, y) == 0) ++n;
    return n;
  }
  using namespace modp;
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t t = 1; t <= p / 2; ++t) chi[mul(t, t, p)] = 1;
  const std::uint64_t b2 = add(mul(c.a1, c.a1, p), mul(4 % p, c.a2, p), p);
  const std::uint64_t b4 = add(mul(2 % p, c.a4, p), mul(c.a1, c.a3, p), p);
  const std::uint64_t b6 = add(mul(c.a3, c.a3, p), mul(4 % p, c.a6, p), p);
  const std::uint64_t four = 4 % p, two_b4 = mul(2 % p, b4, p);
  long long sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    // Horner: ((4x + b2) x + 2 b4) x + b6
    std::uint64_t g = add(mul(four, x, p), b2, p);
    g = add(mul(g, x, p), two_b4, p);
    g = add(mul(g, x, p), b6, p);
    sum += chi[g];
  }
  return static_cast<std::uint64_t>(static_cast<long long>(p) + 1 + sum);
}

}  // namespace detail

/// Reduces the curve mod p and classifies the reduction by locating the singular
/// point and testing whether the node's tangent slopes lie in F_p.
inline ReducedCurve reduce_mod_p(const WeierstrassCurve& curve, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::Precondition, std::to_string(p) + " is not prime");
  ReducedCurve out;
  out.curve = ModCurve::reduce(curve, p);
  out.info.p = p;
  const bool bad = curve.is_singular() || mod_u64(curve.disc(), p) == 0;
  if (!bad) {
    out.info.kind = ReductionKind::good;
    out.info.ns_order = detail::count_nonsingular(out.curve);
    return out;
  }
  const auto sing = detail::find_singular_point(out.curve);
  if (!sing) throw Error(ErrorKind::VerificationFailed, "p | disc but no singular point mod " + std::to_string(p));
  out.info.singular_point = sing;
  using namespace modp;
  // Shift the singular point to the origin; the tangent cone is v^2 + a1 uv - (a2 + 3 x0) u^2.
  const std::uint64_t a1 = out.curve.a1;
  const std::uint64_t a2s = add(out.curve.a2, mul(3 % p, sing->first, p), p);
  const std::uint64_t cone_disc = add(mul(a1, a1, p), mul(4 % p, a2s, p), p);
  if (cone_disc == 0) {
    out.info.kind = ReductionKind::additive;
    out.info.ns_order = p;
    return out;
  }
  bool split = false;
  for (std::uint64_t t = 0; t < p && !split; ++t) {
    split = sub(add(mul(t, t, p), mul(a1, t, p), p), a2s, p) == 0;
  }
  out.info.kind = split ? ReductionKind::split_multiplicative : ReductionKind::nonsplit_multiplicative;
  out.info.ns_order = split ? p - 1 : p + 1;
  return out;
}

/// #E(F_p) at good primes, #E_ns(F_p) at bad ones.
inline std::uint64_t count_points(const WeierstrassCurve& curve, std::uint64_t p) {
  return reduce_mod_p(curve, p).info.ns_order;
}

/// Reduction of a rational point; the identity when p divides its denominators.
inline ModPoint reduce_point(const ReducedCurve& reduced, const RationalPoint& point) {
  const std::uint64_t p = reduced.curve.p;
  if (point.identity) return ModPoint::at_infinity(p);
  const auto x = modp::reduce(point.x, p);
  const auto y = modp::reduce(point.y, p);
  if (!x || !y) return ModPoint::at_infinity(p);
  ModPoint out = ModPoint::affine(p, *x, *y);
  if (reduced.info.singular_point) {
    out.singular = reduced.info.singular_point->first == *x && reduced.info.singular_point->second == *y;
  }
  return out;
}

inline bool is_nonsingular_at(const WeierstrassCurve& curve, const RationalPoint& point, std::uint64_t p) {
  const bool bad = curve.is_singular() || mod_u64(curve.disc(), p) == 0;
  if (!bad) return true;
  return !reduce_point(reduce_mod_p(curve, p), point).singular;
}

/// Exact order of a point in a finite group of known order.
inline std::uint64_t order_in_group(const ModCurve& c, const ModPoint& point, std::uint64_t group_order) {
  if (point.identity) return 1;
  std::uint64_t order = group_order;
  for (const auto& [q, e] : factor(group_order)) {
    for (unsigned i = 0; i < e && order % q == 0; ++i) {
      if (!mod_multiply(c, point, order / q).identity) break;
      order /= q;
    }
  }
  if (!mod_multiply(c, point, order).identity) {
    throw Error(ErrorKind::VerificationFailed, "point order does not divide the group order");
  }
  return order;
}

/// Order of P mod p in E_ns(F_p).
inline std::uint64_t point_order_mod_p(const WeierstrassCurve& curve, const RationalPoint& point, std::uint64_t p) {
  const ReducedCurve reduced = reduce_mod_p(curve, p);
  const ModPoint pbar = reduce_point(reduced, point);
  if (pbar.singular) {
    throw Error(ErrorKind::SingularReduction, "P reduces to the singular point mod " + std::to_string(p));
  }
  return order_in_group(reduced.curve, pbar, reduced.info.ns_order);
}

}  // namespace edslab
