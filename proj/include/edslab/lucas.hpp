#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "edslab/bigint.hpp"
#include "edslab/curve.hpp"
#include "edslab/divgraph.hpp"
#include "edslab/eds.hpp"
#include "edslab/error.hpp"
#include "edslab/primes.hpp"

namespace edslab {

inline constexpr std::uint64_t kLucasSetLimit = 100'000;

/// L_0 = 0, L_1 = 1, L_{n+2} = a L_{n+1} - b L_n.
struct LucasSequence {
  Integer a, b;
  Integer delta() const { return a * a - 4 * b; }
};

/// L_1 .. L_N.
inline std::vector<Integer> lucas_terms(const Integer& a, const Integer& b, std::uint64_t count) {
  if (count < 1) throw Error(ErrorKind::Precondition, "need at least one term");
  std::vector<Integer> out;
  out.reserve(count);
  Integer prev = 0, cur = 1;
  for (std::uint64_t i = 1; i <= count; ++i) {
    out.push_back(cur);
    Integer next = a * cur - b * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

/// L_n mod m by running the recursion with residues.
inline std::uint64_t lucas_mod(const Integer& a, const Integer& b, std::uint64_t n, std::uint64_t m) {
  if (m == 1) return 0;
  const std::uint64_t am = mod_u64(a, m), bm = mod_u64(b, m);
  std::uint64_t prev = 0, cur = 1 % m;
  if (n == 0) return 0;
  for (std::uint64_t i = 1; i < n; ++i) {
    const auto next = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(am) * cur + static_cast<unsigned __int128>(m - bm) * prev) % m);
    prev = cur;
    cur = next;
  }
  return cur;
}

inline IndexDivisibilitySet lucas_divset(const Integer& a, const Integer& b, std::uint64_t x) {
  detail::check_bound(x, kLucasSetLimit);
  IndexDivisibilitySet set;
  set.bound = x;
  set.elements.clear();
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (lucas_mod(a, b, n, n) == 0) set.elements.push_back(n);
  }
  return set;
}

struct SmythPrediction {
  std::uint64_t n = 1;
  std::vector<std::uint64_t> targets;  // np for primes p | L_n * delta, within the bound
  std::vector<Arrow> exceptional;      // from B_{a,b}
  bool degenerate = false;             // delta = 0
};

/// Where the exceptional weight 6 or 12 applies. Brute force shows it leaves every
/// n in S coprime to 6 (e.g. 5 -> 60 for Fibonacci), not only n = 1; the vertex-one
/// reading is kept for comparison.
enum class SmythMode { coprime_to_six, vertex_one_only };

/// {1 -> 6} when a = 3 (mod 6) and b = +-1 (mod 6); {1 -> 12} when a = +-1 and b = -1 (mod 6).
inline std::vector<Arrow> smyth_exceptional(const Integer& a, const Integer& b) {
  const auto am = mod_u64(a, 6), bm = mod_u64(b, 6);
  if (am == 3 && (bm == 1 || bm == 5)) return {{1, 6}};
  if ((am == 1 || am == 5) && bm == 5) return {{1, 12}};
  return {};
}

inline SmythPrediction smyth_arrows(const Integer& a, const Integer& b, std::uint64_t n, std::uint64_t x,
                                    SmythMode mode = SmythMode::coprime_to_six) {
  SmythPrediction pred;
  pred.n = n;
  const Integer delta = a * a - 4 * b;
  if (delta == 0) {
    pred.degenerate = true;
    return pred;
  }
  if (n == 0 || n > x) return pred;
  for (std::uint64_t p : primes_up_to(x / n < 2 ? 1 : x / n)) {
    if (mod_u64(delta, p) == 0 || lucas_mod(a, b, n, p) == 0) pred.targets.push_back(n * p);
  }
  const bool applies = mode == SmythMode::vertex_one_only ? n == 1 : gcd_u64(n, 6) == 1;
  if (applies) {
    for (const auto& arr : smyth_exceptional(a, b)) {
      if (arr.to <= x / n) pred.exceptional.push_back({n, n * arr.to});
    }
  }
  return pred;
}

struct SmythDiff {
  std::vector<Arrow> missing;     // predicted, not found by brute force
  std::vector<Arrow> unexpected;  // found, not predicted
  bool empty() const { return missing.empty() && unexpected.empty(); }
};

inline SmythDiff diff_arrows(std::vector<Arrow> predicted, std::vector<Arrow> actual) {
  std::sort(predicted.begin(), predicted.end());
  predicted.erase(std::unique(predicted.begin(), predicted.end()), predicted.end());
  std::sort(actual.begin(), actual.end());
  SmythDiff d;
  std::set_difference(predicted.begin(), predicted.end(), actual.begin(), actual.end(), std::back_inserter(d.missing));
  std::set_difference(actual.begin(), actual.end(), predicted.begin(), predicted.end(),
                      std::back_inserter(d.unexpected));
  return d;
}

inline std::vector<Arrow> smyth_predicted_arrows(const Integer& a, const Integer& b, const IndexDivisibilitySet& set,
                                                 SmythMode mode = SmythMode::coprime_to_six) {
  std::vector<Arrow> out;
  for (auto n : set.elements) {
    const auto pred = smyth_arrows(a, b, n, set.bound, mode);
    for (auto m : pred.targets) out.push_back({n, m});
    out.insert(out.end(), pred.exceptional.begin(), pred.exceptional.end());
  }
  return out;
}

inline SmythDiff compare_smyth(const Integer& a, const Integer& b, std::uint64_t x,
                               SmythMode mode = SmythMode::coprime_to_six) {
  if (a * a - 4 * b == 0) throw Error(ErrorKind::Precondition, "degenerate Lucas sequence: a^2 - 4b = 0");
  const auto set = lucas_divset(a, b, x);
  return diff_arrows(smyth_predicted_arrows(a, b, set, mode), arrows(set));
}

/// y^2 + 3xy + 3y = x^3 + 2x^2 + x, node at (-1, 0).
inline WeierstrassCurve nodal_cubic() { return WeierstrassCurve(3, 2, 3, 1, 0, true); }

struct SingularCrosscheck {
  std::vector<Integer> eds;
  std::vector<Integer> lucas;
  std::uint64_t first_mismatch = 0;  // 0 when all agree
  bool agree() const { return first_mismatch == 0; }
};

inline SingularCrosscheck singular_eds_crosscheck(std::uint64_t count) {
  SingularCrosscheck rep;
  EdsContext ctx(nodal_cubic(), RationalPoint::affine(0, 0));
  rep.eds = ctx.terms(count);
  rep.lucas = lucas_terms(3, 1, count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (rep.eds[i] != rep.lucas[i]) {
      rep.first_mismatch = i + 1;
      break;
    }
  }
  return rep;
}

}  // namespace edslab
