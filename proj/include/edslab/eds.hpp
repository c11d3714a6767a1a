#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edslab/bigint.hpp"
#include "edslab/curve.hpp"
#include "edslab/error.hpp"
#include "edslab/primes.hpp"
#include "edslab/reduction.hpp"

namespace edslab {

inline constexpr std::uint64_t kDefaultTermCap = 10'000;

struct EdsOptions {
  /// Largest index for which exact terms (D_n or W_n) are materialized.
  std::uint64_t term_cap = kDefaultTermCap;
  /// Lifts the cap entirely.
  bool override_cap = false;
};

/// Ward terms W_1..W_4 evaluated at an integral point: psi_1, psi_2, psi_3, psi_4.
inline std::array<Integer, 4> ward_initial(const WeierstrassCurve& curve, const RationalPoint& point) {
  if (point.identity || !point.is_integral()) {
    throw Error(ErrorKind::Precondition, "Ward terms need an integral affine point");
  }
  const Integer x = point.x.get_num();
  const Integer y = point.y.get_num();
  const Integer &b2 = curve.b2(), &b4 = curve.b4(), &b6 = curve.b6(), &b8 = curve.b8();
  const Integer psi2 = 2 * y + curve.a1() * x + curve.a3();
  const Integer x2 = x * x;
  const Integer x3 = x2 * x;
  const Integer psi3 = 3 * x2 * x2 + b2 * x3 + 3 * b4 * x2 + 3 * b6 * x + b8;
  const Integer psi4 = psi2 * (2 * x3 * x3 + b2 * x3 * x2 + 5 * b4 * x2 * x2 + 10 * b6 * x3 + 10 * b8 * x2 +
                               (b2 * b8 - b4 * b6) * x + (b4 * b8 - b6 * b6));
  return {Integer(1), psi2, psi3, psi4};
}

namespace detail {

/// Ring policies for the window doubling. W_{2i} carries a division by W_2.
struct ExactRing {
  Integer w2;
  Integer normalize(const Integer& v) const { return v; }
  Integer div_w2(const Integer& v) const {
    Integer q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), w2.get_mpz_t());
    return q;
  }
};

struct ResidueRing {
  Integer modulus;
  Integer w2_inverse;
  Integer normalize(const Integer& v) const { return mod_floor(v, modulus); }
  Integer div_w2(const Integer& v) const { return mod_floor(v * w2_inverse, modulus); }
};

/// Computes W_n by doubling a window of eight consecutive terms W_{k-3..k+4}.
/// Odd terms use W_{2i+1} = W_{i+2} W_i^3 - W_{i-1} W_{i+1}^3; even terms use
/// W_{2i} = W_i (W_{i+2} W_{i-1}^2 - W_{i-2} W_{i+1}^2) / W_2.
template <class Ring>
Integer ward_window_term(const std::array<Integer, 4>& init, std::uint64_t n, const Ring& ring) {
  if (n == 0) return Integer(0);
  const Integer& w1 = init[0];
  const Integer w2 = ring.normalize(init[1]);
  const Integer w3 = ring.normalize(init[2]);
  const Integer w4 = ring.normalize(init[3]);
  const Integer w5 = ring.normalize(w4 * w2 * w2 * w2 - w1 * w3 * w3 * w3);
  // Offset 3 holds index k.
  std::array<Integer, 8> win{ring.normalize(-w2), ring.normalize(Integer(-1)), Integer(0), ring.normalize(w1),
                             w2, w3, w4, w5};
  if (n == 1) return win[3];

  auto at = [&](long long index, long long k) -> const Integer& { return win[static_cast<std::size_t>(index - k + 3)]; };
  auto term = [&](long long j, long long k) -> Integer {
    const long long i = j >> 1;  // floor division, j >= 2k-3 >= -1 so i >= -1
    if (j & 1) {
      const Integer& a = at(i + 1, k);
      const Integer& b = at(i, k);
      return ring.normalize(at(i + 2, k) * b * b * b - at(i - 1, k) * a * a * a);
    }
    const Integer& m1 = at(i - 1, k);
    const Integer& p1 = at(i + 1, k);
    return ring.div_w2(ring.normalize(at(i, k) * (at(i + 2, k) * m1 * m1 - at(i - 2, k) * p1 * p1)));
  };

  int top = 63;
  while (((n >> top) & 1ULL) == 0) --top;
  long long k = 1;
  for (int bit = top - 1; bit >= 0; --bit) {
    const long long next = 2 * k + static_cast<long long>((n >> bit) & 1ULL);
    std::array<Integer, 8> fresh;
    for (long long j = next - 3; j <= next + 4; ++j) fresh[static_cast<std::size_t>(j - next + 3)] = term(j, k);
    win = std::move(fresh);
    k = next;
  }
  return win[3];
}

inline Integer crt_pair(const Integer& r1, const Integer& m1, const Integer& r2, const Integer& m2) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0) {
    throw Error(ErrorKind::Precondition, "CRT moduli are not coprime");
  }
  const Integer t = mod_floor((r2 - r1) * inv, m2);
  return mod_floor(r1 + m1 * t, m1 * m2);
}

inline void check_cap(std::uint64_t n, const EdsOptions& opts, const char* what) {
  if (!opts.override_cap && n > opts.term_cap) {
    throw Error(ErrorKind::TermCapExceeded, std::string(what) + " index " + std::to_string(n) + " exceeds cap " +
                                                std::to_string(opts.term_cap));
  }
}

}  // namespace detail

/// Exact W_n = psi_n(P) for an integral point.
inline Integer ward_term_exact(const WeierstrassCurve& curve, const RationalPoint& point, std::uint64_t n,
                               const EdsOptions& opts = {}) {
  detail::check_cap(n, opts, "exact Ward term");
  const auto init = ward_initial(curve, point);
  if (init[1] == 0) throw Error(ErrorKind::TorsionPoint, "W_2 = 0: the point is 2-torsion");
  return detail::ward_window_term(init, n, detail::ExactRing{init[1]});
}

/// W_1..W_N from the duplication recurrences, computed bottom-up.
inline std::vector<Integer> ward_exact(const WeierstrassCurve& curve, const RationalPoint& point, std::uint64_t count,
                                       const EdsOptions& opts = {}) {
  detail::check_cap(count, opts, "exact Ward sequence");
  const auto init = ward_initial(curve, point);
  if (init[1] == 0) throw Error(ErrorKind::TorsionPoint, "W_2 = 0: the point is 2-torsion");
  std::vector<Integer> w(std::max<std::uint64_t>(count, 4) + 1);
  w[0] = 0;
  for (int i = 0; i < 4; ++i) w[static_cast<std::size_t>(i + 1)] = init[static_cast<std::size_t>(i)];
  for (std::uint64_t j = 5; j <= count; ++j) {
    const std::uint64_t i = j / 2;
    if (j & 1) {
      w[j] = w[i + 2] * w[i] * w[i] * w[i] - w[i - 1] * w[i + 1] * w[i + 1] * w[i + 1];
    } else {
      const Integer num = w[i] * (w[i + 2] * w[i - 1] * w[i - 1] - w[i - 2] * w[i + 1] * w[i + 1]);
      mpz_divexact(w[j].get_mpz_t(), num.get_mpz_t(), init[1].get_mpz_t());
    }
  }
  w.resize(count + 1);
  w.erase(w.begin());
  return w;
}

/// W_n mod m. When W_2 is not a unit mod m, the part of m sharing primes with W_2
/// is split off and handled with exact terms, then recombined by CRT.
inline Integer ward_mod(const WeierstrassCurve& curve, const RationalPoint& point, std::uint64_t n,
                        const Integer& modulus, const EdsOptions& opts = {}) {
  if (modulus < 2) throw Error(ErrorKind::Precondition, "ward_mod needs modulus >= 2");
  const auto init = ward_initial(curve, point);
  if (init[1] == 0) throw Error(ErrorKind::TorsionPoint, "W_2 = 0: the point is 2-torsion");

  Integer coprime = modulus;
  Integer shared = 1;
  for (Integer t = gcd(coprime, init[1]); t > 1; t = gcd(coprime, t)) {
    coprime /= t;
    shared *= t;
  }
  Integer residue = 0;
  if (coprime > 1) {
    detail::ResidueRing ring{coprime, Integer()};
    mpz_invert(ring.w2_inverse.get_mpz_t(), mod_floor(init[1], coprime).get_mpz_t(), coprime.get_mpz_t());
    residue = detail::ward_window_term(init, n, ring);
  }
  if (shared == 1) return residue;
  const Integer exact_part = mod_floor(ward_term_exact(curve, point, n, opts), shared);
  if (coprime == 1) return exact_part;
  return detail::crt_pair(residue, coprime, exact_part, shared);
}

/// Term of an EDS: x([n]P) = A_n / D_n^2, y([n]P) = B_n / D_n^3.
struct EdsTerm {
  Integer a;
  Integer b;
  Integer d;
};

/// Report on the formal-group valuation inequality ord_p(D_{mn}) >= ord_p(m D_n).
struct ValuationReport {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  unsigned lhs = 0;
  unsigned rhs = 0;
  bool strict = false;
  bool p_is_two = false;
  bool two_divides_m = false;
  bool ord2_dn_is_one = false;
  bool ordinary_or_multiplicative_at_two = false;

  bool exceptional() const { return p_is_two && two_divides_m && ord2_dn_is_one && ordinary_or_multiplicative_at_two; }
  bool consistent() const { return lhs >= rhs && strict == exceptional(); }
};

/// A (curve, point) pair with memoized exact terms.
///
/// Single writer: computing a term mutates the cache. Read-only sharing is fine
/// once the needed terms are warm.
class EdsContext {
 public:
  EdsContext(WeierstrassCurve curve, RationalPoint point, EdsOptions opts = {})
      : curve_(std::move(curve)), point_(std::move(point)), opts_(opts) {
    if (point_.identity) throw Error(ErrorKind::TorsionPoint, "base point is the identity");
    if (!on_curve(curve_, point_)) throw Error(ErrorKind::Precondition, point_.literal() + " is not on the curve");
    if (is_singular_point(curve_, point_)) {
      throw Error(ErrorKind::SingularOperand, "base point is the singular point of the cubic");
    }
    if (!is_nontorsion(curve_, point_)) throw Error(ErrorKind::TorsionPoint, point_.literal() + " is torsion");
  }

  const WeierstrassCurve& curve() const { return curve_; }
  const RationalPoint& point() const { return point_; }
  const EdsOptions& options() const { return opts_; }
  bool normalized() const { return normalized_; }
  bool ward_available() const { return point_.is_integral(); }

  /// D_n, divided by D_1 when the context is normalized.
  Integer term(std::uint64_t n) {
    const Integer& raw = raw_term(n).d;
    if (!normalized_) return raw;
    Integer q;
    mpz_divexact(q.get_mpz_t(), raw.get_mpz_t(), scale_.get_mpz_t());
    return q;
  }

  /// Exact (A_n, B_n, D_n) of the underlying model.
  const EdsTerm& raw_term(std::uint64_t n) {
    if (n == 0) throw Error(ErrorKind::Precondition, "EDS indices start at 1");
    if (auto it = cache_.find(n); it != cache_.end()) return it->second;
    detail::check_cap(n, opts_, "exact EDS term");
    RationalPoint multiple;
    if (n == 1) {
      multiple = point_;
    } else if (auto prev = cache_.find(n - 1); prev != cache_.end()) {
      multiple = add(curve_, as_point(prev->second), point_);
    } else if (auto half = cache_.find(n / 2); n % 2 == 0 && half != cache_.end()) {
      const RationalPoint h = as_point(half->second);
      multiple = add(curve_, h, h);
    } else {
      multiple = multiply(curve_, point_, static_cast<long long>(n));
    }
    return cache_.emplace(n, to_term(multiple, n)).first->second;
  }

  std::vector<Integer> terms(std::uint64_t count) {
    std::vector<Integer> out;
    out.reserve(count);
    for (std::uint64_t n = 1; n <= count; ++n) out.push_back(term(n));
    return out;
  }

  /// Divides every term by D_1; the result may no longer come from a minimal model.
  EdsContext normalize() {
    EdsContext out = *this;
    out.scale_ = raw_term(1).d;
    out.normalized_ = true;
    return out;
  }

  bool is_good_prime(std::uint64_t p) const { return !curve_.is_singular() && mod_u64(curve_.disc(), p) != 0; }

  /// ord_p(D_n). At good primes with an integral point this reads W_n mod p^k for
  /// k = 1, 2, 4, ..., 64 (the valuations agree there); otherwise exact terms are used.
  unsigned term_valuation(std::uint64_t n, std::uint64_t p) {
    unsigned v = raw_valuation(n, p);
    if (normalized_) v -= valuation(scale_, p);
    return v;
  }

  /// Whether m divides D_n, decided prime by prime.
  bool term_divisible_by(std::uint64_t n, std::uint64_t m) {
    if (m == 1) return true;
    std::uint64_t good_part = 1;
    std::vector<PrimePower> bad;
    for (const auto& pp : factor(m)) {
      if (is_good_prime(pp.prime) && ward_available() && !normalized_) {
        good_part *= ipow(pp.prime, pp.exponent);
      } else {
        bad.push_back(pp);
      }
    }
    if (good_part > 1 && ward_mod(curve_, point_, n, Integer(static_cast<unsigned long>(good_part)), opts_) != 0) {
      return false;
    }
    for (const auto& [p, e] : bad) {
      if (term_valuation(n, p) < e) return false;
    }
    return true;
  }

  /// D_n mod m from the exact term.
  Integer term_mod(std::uint64_t n, const Integer& m) { return mod_floor(term(n), m); }

  ValuationReport check_formal_group(std::uint64_t p, std::uint64_t n, std::uint64_t m) {
    if (term_valuation(n, p) == 0) {
      throw Error(ErrorKind::Precondition, std::to_string(p) + " does not divide D_" + std::to_string(n));
    }
    ValuationReport r;
    r.p = p;
    r.n = n;
    r.m = m;
    r.lhs = term_valuation(m * n, p);
    r.rhs = valuation(Integer(static_cast<unsigned long>(m)), p) + term_valuation(n, p);
    r.strict = r.lhs > r.rhs;
    r.p_is_two = p == 2;
    r.two_divides_m = m % 2 == 0;
    r.ord2_dn_is_one = term_valuation(n, 2) == 1;
    const auto at_two = reduce_mod_p(curve_, 2).info;
    r.ordinary_or_multiplicative_at_two =
        (at_two.kind == ReductionKind::good && at_two.ns_order % 2 == 0) || is_multiplicative(at_two.kind);
    return r;
  }

  /// log(D_n) / n^2 for n = 1..N.
  std::vector<double> growth_diagnostic(std::uint64_t count) {
    std::vector<double> out;
    for (std::uint64_t n = 1; n <= count; ++n) {
      const Integer d = term(n);
      long exp2 = 0;
      const double mant = mpz_get_d_2exp(&exp2, d.get_mpz_t());
      const double log_d = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
      out.push_back(log_d / static_cast<double>(n * n));
    }
    return out;
  }

 private:
  RationalPoint as_point(const EdsTerm& t) const {
    const Integer d2 = t.d * t.d;
    return RationalPoint::affine(Rational(t.a, d2), Rational(t.b, d2 * t.d));
  }

  static EdsTerm to_term(const RationalPoint& q, std::uint64_t n) {
    if (q.identity) throw Error(ErrorKind::TorsionPoint, "[" + std::to_string(n) + "]P is the identity");
    EdsTerm t;
    if (!exact_sqrt(q.x.get_den(), t.d)) {
      throw Error(ErrorKind::NonSquareDenominator, "denominator of x([" + std::to_string(n) + "]P) is not a square");
    }
    t.a = q.x.get_num();
    t.b = q.y.get_num();
    if (q.y.get_den() != t.d * t.d * t.d) {
      throw Error(ErrorKind::NonSquareDenominator, "denominator of y([" + std::to_string(n) + "]P) is not D_n^3");
    }
    return t;
  }

  unsigned raw_valuation(std::uint64_t n, std::uint64_t p) {
    if (is_good_prime(p) && ward_available()) {
      const Integer prime(static_cast<unsigned long>(p));
      if (ward_mod(curve_, point_, n, prime, opts_) != 0) return 0;
      for (unsigned k = 2; k <= 64; k *= 2) {
        const Integer residue = ward_mod(curve_, point_, n, pow_int(prime, k), opts_);
        if (residue != 0) return valuation(residue, prime);
      }
    }
    return valuation(raw_term(n).d, Integer(static_cast<unsigned long>(p)));
  }

  WeierstrassCurve curve_;
  RationalPoint point_;
  EdsOptions opts_;
  std::map<std::uint64_t, EdsTerm> cache_;
  Integer scale_ = 1;
  bool normalized_ = false;
};

}  // namespace edslab
