#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "edslab/bigint.hpp"
#include "edslab/error.hpp"
#include "edslab/primes.hpp"

namespace edslab {

/// Long Weierstrass cubic y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z.
///
/// The b/c invariants and the discriminant are computed once at construction.
/// A vanishing discriminant is only accepted when the caller asks for a singular
/// cubic explicitly; group operations then act on the non-singular locus.
class WeierstrassCurve {
 public:
  WeierstrassCurve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6, bool allow_singular = false)
      : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    const auto& [c1, c2, c3, c4_, c6_] = a_;
    b2_ = c1 * c1 + 4 * c2;
    b4_ = 2 * c4_ + c1 * c3;
    b6_ = c3 * c3 + 4 * c6_;
    b8_ = c1 * c1 * c6_ + 4 * c2 * c6_ - c1 * c3 * c4_ + c2 * c3 * c3 - c4_ * c4_;
    c4_inv_ = b2_ * b2_ - 24 * b4_;
    c6_inv_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    singular_ = (disc_ == 0);
    if (singular_ && !allow_singular) {
      throw Error(ErrorKind::Precondition, "discriminant is zero; pass allow_singular for a singular cubic");
    }
  }

  static WeierstrassCurve from_array(const std::array<Integer, 5>& a, bool allow_singular = false) {
    return WeierstrassCurve(a[0], a[1], a[2], a[3], a[4], allow_singular);
  }

  const Integer& a1() const { return a_[0]; }
  const Integer& a2() const { return a_[1]; }
  const Integer& a3() const { return a_[2]; }
  const Integer& a4() const { return a_[3]; }
  const Integer& a6() const { return a_[4]; }
  const std::array<Integer, 5>& coefficients() const { return a_; }

  const Integer& b2() const { return b2_; }
  const Integer& b4() const { return b4_; }
  const Integer& b6() const { return b6_; }
  const Integer& b8() const { return b8_; }
  const Integer& c4() const { return c4_inv_; }
  const Integer& c6() const { return c6_inv_; }
  const Integer& disc() const { return disc_; }
  bool is_singular() const { return singular_; }

  /// j = c4^3 / disc in lowest terms; empty for singular cubics.
  std::optional<Rational> j_invariant() const {
    if (singular_) return std::nullopt;
    Rational j(c4_inv_ * c4_inv_ * c4_inv_, disc_);
    j.canonicalize();
    return j;
  }

  /// F(x, y) = y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6).
  template <class T>
  T evaluate(const T& x, const T& y) const {
    return y * y + a1() * x * y + a3() * y - (x * x * x + a2() * x * x + a4() * x + a6());
  }

  /// The unique singular point of a singular cubic; it is always rational.
  std::pair<Rational, Rational> singular_point() const;

  std::string literal() const {
    return "[" + to_decimal(a1()) + "," + to_decimal(a2()) + "," + to_decimal(a3()) + "," + to_decimal(a4()) + "," +
           to_decimal(a6()) + "]";
  }

  friend bool operator==(const WeierstrassCurve& l, const WeierstrassCurve& r) { return l.a_ == r.a_; }

 private:
  std::array<Integer, 5> a_;
  Integer b2_, b4_, b6_, b8_, c4_inv_, c6_inv_, disc_;
  bool singular_ = false;
};

inline std::pair<Rational, Rational> WeierstrassCurve::singular_point() const {
  if (!singular_) throw Error(ErrorKind::Precondition, "curve is non-singular");
  // F_y = 0 gives y = -(a1 x + a3)/2; F_x = 0 then reduces to 6x^2 + b2 x + b4 = 0,
  // whose discriminant is c4.
  Integer root;
  if (!exact_sqrt(c4_inv_, root)) {
    throw Error(ErrorKind::VerificationFailed, "singular point is not rational");
  }
  for (int sign : {1, -1}) {
    Rational x(-b2_ + sign * root, Integer(12));
    x.canonicalize();
    Rational y = -(Rational(a1()) * x + Rational(a3())) / 2;
    if (evaluate<Rational>(x, y) == 0) return {x, y};
  }
  throw Error(ErrorKind::VerificationFailed, "no singular point found on singular cubic");
}

/// Either the identity O or an affine point with coordinates in lowest terms.
struct RationalPoint {
  bool identity = true;
  Rational x;
  Rational y;

  static RationalPoint at_infinity() { return {}; }
  static RationalPoint affine(Rational x, Rational y) {
    x.canonicalize();
    y.canonicalize();
    return {false, std::move(x), std::move(y)};
  }

  bool is_integral() const { return identity || (x.get_den() == 1 && y.get_den() == 1); }

  std::string literal() const {
    if (identity) return "O";
    return "(" + to_decimal(x) + "," + to_decimal(y) + ")";
  }

  friend bool operator==(const RationalPoint& l, const RationalPoint& r) {
    if (l.identity || r.identity) return l.identity == r.identity;
    return l.x == r.x && l.y == r.y;
  }
};

inline bool on_curve(const WeierstrassCurve& curve, const RationalPoint& p) {
  return p.identity || curve.evaluate<Rational>(p.x, p.y) == 0;
}

inline bool is_singular_point(const WeierstrassCurve& curve, const RationalPoint& p) {
  if (p.identity || !curve.is_singular()) return false;
  const auto [sx, sy] = curve.singular_point();
  return p.x == sx && p.y == sy;
}

inline RationalPoint negate(const WeierstrassCurve& curve, const RationalPoint& p) {
  if (p.identity) return p;
  return RationalPoint::affine(p.x, -p.y - Rational(curve.a1()) * p.x - Rational(curve.a3()));
}

namespace detail {

inline void require_nonsingular_operand(const WeierstrassCurve& curve, const RationalPoint& p) {
  if (curve.is_singular() && is_singular_point(curve, p)) {
    throw Error(ErrorKind::SingularOperand, "group law undefined at the singular point " + p.literal());
  }
}

}  // namespace detail

/// Chord-tangent addition on E(Q), or on E_ns(Q) for a singular cubic.
inline RationalPoint add(const WeierstrassCurve& curve, const RationalPoint& p, const RationalPoint& q) {
  detail::require_nonsingular_operand(curve, p);
  detail::require_nonsingular_operand(curve, q);
  if (p.identity) return q;
  if (q.identity) return p;
  const Rational a1(curve.a1()), a2(curve.a2()), a3(curve.a3()), a4(curve.a4());
  Rational lambda;
  if (p.x == q.x) {
    if (p.y + q.y + a1 * q.x + a3 == 0) return RationalPoint::at_infinity();
    lambda = (3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / (2 * p.y + a1 * p.x + a3);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  const Rational nu = p.y - lambda * p.x;
  Rational x3 = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  Rational y3 = -(lambda + a1) * x3 - nu - a3;
  return RationalPoint::affine(std::move(x3), std::move(y3));
}

inline RationalPoint multiply(const WeierstrassCurve& curve, const RationalPoint& p, long long n) {
  if (n < 0) return multiply(curve, negate(curve, p), -n);
  RationalPoint result = RationalPoint::at_infinity();
  RationalPoint base = p;
  auto k = static_cast<unsigned long long>(n);
  while (k > 0) {
    if (k & 1ULL) result = add(curve, result, base);
    k >>= 1;
    if (k > 0) base = add(curve, base, base);
  }
  return result;
}

/// Rational torsion has order at most 12, so a point surviving [m] for 2 <= m <= 12 has infinite order.
inline bool is_nontorsion(const WeierstrassCurve& curve, const RationalPoint& p) {
  if (p.identity) return false;
  RationalPoint multiple = p;
  for (int m = 2; m <= 12; ++m) {
    multiple = add(curve, multiple, p);
    if (multiple.identity) return false;
  }
  return true;
}

enum class Minimality { minimal_certified, possibly_nonminimal };

inline const char* to_string(Minimality m) {
  return m == Minimality::minimal_certified ? "minimal_certified" : "possibly_nonminimal";
}

/// Flags a model as possibly non-minimal when some p has p^4 | c4 and p^12 | disc.
/// For p in {2,3} the criterion is not sufficient, so any 2- or 3-part of disc of
/// size at least p^12 already downgrades the answer.
inline Minimality minimality_heuristic(const WeierstrassCurve& curve) {
  if (curve.is_singular()) throw Error(ErrorKind::Precondition, "minimality check needs disc != 0");
  const Integer& disc = curve.disc();
  for (std::uint64_t p : {2ULL, 3ULL}) {
    if (valuation(disc, p) >= 12) return Minimality::possibly_nonminimal;
  }
  Integer shared = curve.c4() == 0 ? abs_value(disc) : gcd(curve.c4(), disc);
  for (std::uint64_t p : {2ULL, 3ULL}) {
    while (divides(Integer(p), shared)) shared /= p;
  }
  for (auto p32 : sieve_primes()) {
    if (shared == 1) break;
    const Integer p(static_cast<unsigned long>(p32));
    if (!divides(p, shared)) continue;
    const bool c4_ok = curve.c4() == 0 || valuation(curve.c4(), p) >= 4;
    if (c4_ok && valuation(disc, p) >= 12) return Minimality::possibly_nonminimal;
    while (divides(p, shared)) shared /= p;
  }
  // A surviving cofactor only has primes above the sieve; p^12 with p > 10^6 needs at least 10^72.
  if (shared > 1 && mpz_sizeinbase(shared.get_mpz_t(), 10) > 72) return Minimality::possibly_nonminimal;
  return Minimality::minimal_certified;
}

}  // namespace edslab
