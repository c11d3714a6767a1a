#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "edslab/error.hpp"

namespace edslab {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer abs_value(const Integer& x) {
  Integer r;
  mpz_abs(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

/// Least non-negative residue of x modulo m (m > 0).
inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::uint64_t mod_u64(const Integer& x, std::uint64_t m) {
  return mpz_fdiv_ui(x.get_mpz_t(), m);
}

inline bool divides(const Integer& d, const Integer& x) {
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer pow_int(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// Exact p-adic valuation of a non-zero integer.
inline unsigned valuation(const Integer& x, const Integer& p) {
  if (x == 0) throw Error(ErrorKind::ZeroArgument, "valuation of zero");
  if (p < 2) throw Error(ErrorKind::Precondition, "valuation base must be >= 2");
  Integer t = x;
  return static_cast<unsigned>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
}

inline unsigned valuation(const Integer& x, std::uint64_t p) { return valuation(x, Integer(p)); }

/// Returns true and sets root when x is a perfect square (x >= 0).
inline bool exact_sqrt(const Integer& x, Integer& root) {
  if (x < 0 || mpz_perfect_square_p(x.get_mpz_t()) == 0) return false;
  mpz_sqrt(root.get_mpz_t(), x.get_mpz_t());
  return true;
}

inline Integer parse_integer(const std::string& text) {
  Integer r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw Error(ErrorKind::Parse, "not a decimal integer: '" + text + "'");
  }
  return r;
}

inline std::string to_decimal(const Integer& x) { return x.get_str(10); }

inline std::string to_decimal(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

}  // namespace edslab
