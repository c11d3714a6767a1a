#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "edslab/error.hpp"

namespace edslab {

/// Primes up to the sieve limit; every factorization in the library trial-divides by these.
inline constexpr std::uint64_t kSieveLimit = 1'000'000;

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

namespace detail {

inline std::vector<std::uint32_t> build_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace detail

inline const std::vector<std::uint32_t>& sieve_primes() {
  static const std::vector<std::uint32_t> primes = detail::build_sieve(kSieveLimit);
  return primes;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  if (bound > kSieveLimit) {
    throw Error(ErrorKind::Precondition, "prime bound exceeds sieve limit " + std::to_string(kSieveLimit));
  }
  const auto& all = sieve_primes();
  std::vector<std::uint64_t> out;
  for (auto p : all) {
    if (p > bound) break;
    out.push_back(p);
  }
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n <= kSieveLimit) return std::binary_search(sieve_primes().begin(), sieve_primes().end(), n);
  for (auto p : sieve_primes()) {
    if (static_cast<std::uint64_t>(p) * p > n) return true;
    if (n % p == 0) return false;
  }
  throw Error(ErrorKind::FactorizationFailure, "primality of " + std::to_string(n) + " beyond trial-division scale");
}

/// Trial division by the sieve. Inputs up to kSieveLimit^2 are handled; larger ones
/// with an unresolved cofactor raise FactorizationFailure.
inline Factorization factor(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::ZeroArgument, "factor(0)");
  Factorization out;
  for (auto p32 : sieve_primes()) {
    std::uint64_t p = p32;
    if (p * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) {
    if (n > kSieveLimit * kSieveLimit) {
      throw Error(ErrorKind::FactorizationFailure, "cofactor " + std::to_string(n) + " beyond trial-division scale");
    }
    out.push_back({n, 1});
  }
  return out;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factor(n)) out.push_back(pp.prime);
  return out;
}

inline std::uint64_t smallest_prime_factor(std::uint64_t n) {
  if (n < 2) throw Error(ErrorKind::Precondition, "no prime factor of " + std::to_string(n));
  return factor(n).front().prime;
}

/// All positive divisors in ascending order.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) a = std::exchange(b, a % b);
  return a;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }

/// Largest r with r*r <= n.
inline std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace edslab
