#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "edslab/apparition.hpp"
#include "edslab/bigint.hpp"
#include "edslab/eds.hpp"
#include "edslab/error.hpp"
#include "edslab/primes.hpp"
#include "edslab/reduction.hpp"

namespace edslab {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 1'000'000;

struct IndexDivisibilitySet {
  std::uint64_t bound = 1;
  std::vector<std::uint64_t> elements{1};

  bool contains(std::uint64_t n) const { return std::binary_search(elements.begin(), elements.end(), n); }
};

struct Arrow {
  std::uint64_t from = 1;
  std::uint64_t to = 1;
  std::uint64_t weight() const { return to / from; }
  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

enum class ArrowKind { prime_divides_Dn, additive_reduction_prime, aliquot_number, nonstandard };

inline const char* to_string(ArrowKind k) {
  switch (k) {
    case ArrowKind::prime_divides_Dn: return "prime_divides_Dn";
    case ArrowKind::additive_reduction_prime: return "additive_reduction_prime";
    case ArrowKind::aliquot_number: return "aliquot_number";
    case ArrowKind::nonstandard: return "nonstandard";
  }
  return "?";
}

struct ArrowClassification {
  Arrow arrow;
  ArrowKind kind = ArrowKind::prime_divides_Dn;
  // Filled for nonstandard arrows.
  unsigned t = 0;
  std::uint64_t p0 = 0;
  Rational lhs;
  bool bound_ok = false;
  /// prod (1 + 1/sqrt p)^2 over p | d, the Hasse upper estimate for lhs.
  double hasse_product = 0.0;
  /// prod (1 + 1/sqrt p) >= sqrt 2, which every nonstandard weight must pass.
  bool weight_filter_ok = false;
  /// Some p | d has bad reduction, so lhs used E_ns and a component-group refinement could matter.
  bool neron_caveat = false;
  bool regular_context = true;
};

struct AliquotCycle {
  std::vector<std::uint64_t> primes;
  bool generalized = false;

  std::uint64_t aliquot_number() const {
    return std::accumulate(primes.begin(), primes.end(), std::uint64_t{1}, std::multiplies<>());
  }
  friend bool operator==(const AliquotCycle&, const AliquotCycle&) = default;
};

struct GdGraph {
  std::uint64_t n = 1;
  std::uint64_t d = 1;
  std::vector<std::uint64_t> vertices;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> arrows;
  std::map<std::uint64_t, unsigned> in_degree, out_degree;
  std::map<std::uint64_t, std::uint64_t> rank, cofactor;
  bool connected = false;
  bool coprime_to_dn = false;
  Rational rank_ratio_product;  // prod r_p / p
  Rational degree_product;      // prod q^(InDeg q - 1) * prod M_p
  bool identity_holds = false;

  bool supports_arrow() const {
    for (auto v : vertices) {
      if (in_degree.at(v) == 0 || out_degree.at(v) == 0) return false;
    }
    return connected;
  }
};

struct EllipticAliquotCycle {
  std::vector<std::uint64_t> primes;
  friend bool operator==(const EllipticAliquotCycle&, const EllipticAliquotCycle&) = default;
};

struct Prop63Report {
  Rational product;
  std::uint64_t min_prime = 0;
  double threshold = 0.0;
  bool threshold_met = false;
  bool elliptic_cycle = false;
  bool implication_holds = true;
};

namespace detail {

/// Runs work(i) for i in [0, count) on up to jobs threads; results land in index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, F work) {
  std::vector<T> out(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = work(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&, j] {
      try {
        for (std::size_t i = j; i < count; i += jobs) out[i] = work(i);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

inline void check_bound(std::uint64_t x, std::uint64_t limit) {
  if (x < 1) throw Error(ErrorKind::Precondition, "bound must be >= 1");
  if (x > limit) {
    throw Error(ErrorKind::Precondition, "bound " + std::to_string(x) + " exceeds limit " + std::to_string(limit));
  }
}

inline bool is_composite(std::uint64_t r) { return r >= 4 && !is_prime(r); }

/// Rotates so the smallest prime comes first.
inline std::vector<std::uint64_t> canonical_rotation(std::vector<std::uint64_t> cycle) {
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

/// Follows next() from p until it returns to p; empty when the walk leaves the primes,
/// repeats another element, or runs past the step budget.
inline std::vector<std::uint64_t> follow_cycle(std::uint64_t p,
                                               const std::function<std::optional<std::uint64_t>(std::uint64_t)>& next,
                                               unsigned max_length = 64) {
  std::vector<std::uint64_t> seen{p};
  std::uint64_t q = p;
  for (unsigned step = 0; step < max_length; ++step) {
    const auto r = next(q);
    if (!r || !is_prime(*r)) return {};
    if (*r == p) return seen;
    if (std::find(seen.begin(), seen.end(), *r) != seen.end()) return {};
    seen.push_back(*r);
    q = *r;
  }
  return {};
}

}  // namespace detail

/// S(D) up to X. Regular contexts reduce to prime ranks, which are computed in
/// parallel; other contexts test n | D_n one index at a time.
inline IndexDivisibilitySet enumerate_set(Apparition& app, std::uint64_t x, unsigned jobs = 1,
                                          std::uint64_t limit = kDefaultEnumerationLimit) {
  detail::check_bound(x, limit);
  IndexDivisibilitySet set;
  set.bound = x;
  set.elements.clear();
  EdsContext& ctx = app.context();
  if (app.regularity().regular && !ctx.normalized()) {
    const auto primes = primes_up_to(x);
    const WeierstrassCurve& curve = ctx.curve();
    const RationalPoint& point = ctx.point();
    const auto ranks = detail::parallel_map<std::uint64_t>(
        primes.size(), jobs, [&](std::size_t i) { return point_order_mod_p(curve, point, primes[i]); });
    std::vector<std::uint64_t> rank_of(x + 1, 0);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      rank_of[primes[i]] = ranks[i];
      app.seed_prime_rank(primes[i], ranks[i]);
    }
    // Smallest-prime-factor sieve so each n factors in O(log n).
    std::vector<std::uint32_t> spf(x + 1, 0);
    for (std::uint64_t p : primes) {
      for (std::uint64_t k = p; k <= x; k += p) {
        if (spf[k] == 0) spf[k] = static_cast<std::uint32_t>(p);
      }
    }
    set.elements.push_back(1);
    for (std::uint64_t n = 2; n <= x; ++n) {
      bool member = true;
      for (std::uint64_t m = n; m > 1 && member;) {
        const std::uint64_t p = spf[m];
        member = n % rank_of[p] == 0;
        while (m % p == 0) m /= p;
      }
      if (member) set.elements.push_back(n);
    }
    return set;
  }
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (app.index_divisible(n)) set.elements.push_back(n);
  }
  return set;
}

/// Arrows n -> m inside the set: n | m with no other element strictly between in the divisor lattice.
inline std::vector<Arrow> arrows(const IndexDivisibilitySet& set) {
  std::vector<Arrow> out;
  for (std::uint64_t m : set.elements) {
    if (m == 1) continue;
    std::vector<std::uint64_t> below;
    for (std::uint64_t k : divisors(m)) {
      if (k != m && set.contains(k)) below.push_back(k);
    }
    for (std::uint64_t n : below) {
      bool minimal = true;
      for (std::uint64_t k : below) {
        if (k != n && k % n == 0) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back({n, m});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// d is squarefree and p -> r_p permutes its primes in a single cycle.
inline bool is_generalized_aliquot_number(Apparition& app, std::uint64_t d) {
  if (d < 2) return false;
  const auto fac = factor(d);
  for (const auto& pe : fac) {
    if (pe.exponent != 1) return false;
    if (!app.nonsingular_at(pe.prime)) return false;
  }
  const std::uint64_t start = fac.front().prime;
  std::uint64_t q = start;
  for (std::size_t step = 0; step < fac.size(); ++step) {
    q = app.rank_prime(q).rank;
    if (!is_prime(q) || d % q != 0) return false;
    if (q == start) return step + 1 == fac.size();
  }
  return false;
}

inline ArrowClassification classify_arrow(Apparition& app, const Arrow& arrow) {
  if (arrow.to % arrow.from != 0 || arrow.to == arrow.from) {
    throw Error(ErrorKind::Precondition, "not an arrow: " + std::to_string(arrow.from) + "->" + std::to_string(arrow.to));
  }
  EdsContext& ctx = app.context();
  ArrowClassification out;
  out.arrow = arrow;
  out.regular_context = app.regularity().regular;
  const std::uint64_t n = arrow.from;
  const std::uint64_t d = arrow.weight();
  auto unclassifiable = [&](const std::string& why) {
    return Error(ErrorKind::UnclassifiableArrow, "arrow " + std::to_string(n) + "->" + std::to_string(arrow.to) + ": " +
                                                     why + (out.regular_context ? "" : " (context is not regular)"));
  };

  if (is_prime(d)) {
    if (ctx.term_divisible_by(n, d)) {
      out.kind = ArrowKind::prime_divides_Dn;
    } else if (app.reduction(d).info.kind == ReductionKind::additive) {
      out.kind = ArrowKind::additive_reduction_prime;
    } else if (app.nonsingular_at(d) && app.rank_prime(d).rank == d) {
      out.kind = ArrowKind::aliquot_number;
    } else if (app.reduction(d).info.kind == ReductionKind::good && app.reduction(d).info.ns_order == 2 * d) {
      throw unclassifiable("#E(F_" + std::to_string(d) + ") = 2p, which the prime-weight case excludes");
    } else {
      throw unclassifiable("prime weight matches no branch");
    }
    return out;
  }

  if (gcd_u64(n, d) == 1 && is_generalized_aliquot_number(app, d)) {
    out.kind = ArrowKind::aliquot_number;
    return out;
  }

  out.kind = ArrowKind::nonstandard;
  out.lhs = 1;
  double filter = 1.0;
  out.hasse_product = 1.0;
  for (std::uint64_t p : prime_divisors(d)) {
    const auto& red = app.reduction(p);
    if (red.info.kind != ReductionKind::good) out.neron_caveat = true;
    if (detail::is_composite(app.rank_prime(p).rank)) ++out.t;
    out.lhs *= Rational(Integer(static_cast<unsigned long>(red.info.ns_order)), Integer(static_cast<unsigned long>(p)));
    const double f = 1.0 + 1.0 / std::sqrt(static_cast<double>(p));
    filter *= f;
    out.hasse_product *= f * f;
  }
  out.lhs.canonicalize();
  out.p0 = smallest_prime_factor(n * d);
  out.bound_ok = out.lhs >= Rational(pow_int(Integer(static_cast<unsigned long>(out.p0)), out.t));
  out.weight_filter_ok = filter >= std::sqrt(2.0);
  if (out.t == 0) throw unclassifiable("composite weight with no composite r_p and not an aliquot number");
  if (!out.bound_ok) throw unclassifiable("nonstandard bound fails: lhs=" + to_decimal(out.lhs));
  return out;
}

/// Prime-weight arrow n -> np with p not dividing D_n at a good prime where #E(F_p) = 2p.
/// The classification theorem says nothing here (only possible for p <= 5).
inline bool outside_prime_weight_hypothesis(Apparition& app, const Arrow& arrow) {
  const std::uint64_t p = arrow.weight();
  if (!is_prime(p) || app.context().term_divisible_by(arrow.from, p)) return false;
  const auto& info = app.reduction(p).info;
  return info.kind == ReductionKind::good && info.ns_order == 2 * p;
}

/// Cycles of p -> r_p among primes p <= X. Only good primes unless generalized.
inline std::vector<AliquotCycle> aliquot_cycles(Apparition& app, std::uint64_t x, bool generalized,
                                                std::uint64_t limit = kDefaultEnumerationLimit) {
  detail::check_bound(x, limit);
  EdsContext& ctx = app.context();
  auto eligible = [&](std::uint64_t p) {
    if (p > kSieveLimit) return false;
    if (!generalized && !ctx.is_good_prime(p)) return false;
    return app.nonsingular_at(p);
  };
  auto next = [&](std::uint64_t p) -> std::optional<std::uint64_t> {
    if (!eligible(p)) return std::nullopt;
    return app.rank_prime(p).rank;
  };
  std::set<std::vector<std::uint64_t>> found;
  for (std::uint64_t p : primes_up_to(x)) {
    auto cycle = detail::follow_cycle(p, next);
    if (!cycle.empty()) found.insert(detail::canonical_rotation(std::move(cycle)));
  }
  std::vector<AliquotCycle> out;
  for (const auto& c : found) out.push_back({c, generalized});
  return out;
}

inline std::vector<std::uint64_t> anomalous_primes(const WeierstrassCurve& curve, std::uint64_t x, unsigned jobs = 1,
                                                   std::uint64_t limit = kDefaultEnumerationLimit) {
  detail::check_bound(x, limit);
  const auto primes = primes_up_to(x);
  const auto hit = detail::parallel_map<char>(primes.size(), jobs, [&](std::size_t i) -> char {
    const std::uint64_t p = primes[i];
    if (curve.is_singular() || mod_u64(curve.disc(), p) == 0) return 0;
    return count_points(curve, p) == p;
  });
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (hit[i]) out.push_back(primes[i]);
  }
  return out;
}

/// Cycles of p -> #E(F_p) over good primes p <= X.
inline std::vector<EllipticAliquotCycle> elliptic_aliquot_cycles(const WeierstrassCurve& curve, std::uint64_t x,
                                                                 std::uint64_t limit = 100'000) {
  detail::check_bound(x, limit);
  std::map<std::uint64_t, std::uint64_t> counts;
  auto next = [&](std::uint64_t p) -> std::optional<std::uint64_t> {
    if (p > kSieveLimit || curve.is_singular() || mod_u64(curve.disc(), p) == 0) return std::nullopt;
    auto it = counts.find(p);
    if (it == counts.end()) it = counts.emplace(p, count_points(curve, p)).first;
    return it->second;
  };
  std::set<std::vector<std::uint64_t>> found;
  for (std::uint64_t p : primes_up_to(x)) {
    auto cycle = detail::follow_cycle(p, next);
    if (!cycle.empty()) found.insert(detail::canonical_rotation(std::move(cycle)));
  }
  std::vector<EllipticAliquotCycle> out;
  for (const auto& c : found) out.push_back({c});
  return out;
}

inline GdGraph gd_graph(Apparition& app, std::uint64_t n, std::uint64_t d) {
  GdGraph g;
  g.n = n;
  g.d = d;
  g.vertices = prime_divisors(d);
  g.coprime_to_dn = true;
  for (auto p : g.vertices) {
    g.in_degree[p] = 0;
    g.out_degree[p] = 0;
    g.rank[p] = app.rank_prime(p).rank;
    if (app.context().term_divisible_by(n, p)) g.coprime_to_dn = false;
  }
  for (auto p : g.vertices) {
    std::uint64_t targets = 1;
    for (auto q : g.vertices) {
      if (g.rank[p] % q == 0) {
        g.arrows.emplace_back(p, q);
        ++g.out_degree[p];
        ++g.in_degree[q];
        targets *= q;
      }
    }
    g.cofactor[p] = g.rank[p] / targets;
  }
  // Weak connectivity by union-find over vertex indices.
  std::map<std::uint64_t, std::uint64_t> parent;
  for (auto v : g.vertices) parent[v] = v;
  std::function<std::uint64_t(std::uint64_t)> root = [&](std::uint64_t v) {
    return parent[v] == v ? v : parent[v] = root(parent[v]);
  };
  for (auto [p, q] : g.arrows) parent[root(p)] = root(q);
  std::set<std::uint64_t> roots;
  for (auto v : g.vertices) roots.insert(root(v));
  g.connected = roots.size() <= 1;

  g.rank_ratio_product = 1;
  g.degree_product = 1;
  for (auto p : g.vertices) {
    g.rank_ratio_product *= Rational(Integer(static_cast<unsigned long>(g.rank[p])), Integer(static_cast<unsigned long>(p)));
    const Integer q(static_cast<unsigned long>(p));
    const int e = static_cast<int>(g.in_degree[p]) - 1;
    g.degree_product *= e >= 0 ? Rational(pow_int(q, e)) : Rational(Integer(1), pow_int(q, -e));
    g.degree_product *= Rational(Integer(static_cast<unsigned long>(g.cofactor[p])));
  }
  g.rank_ratio_product.canonicalize();
  g.degree_product.canonicalize();
  g.identity_holds = g.rank_ratio_product == g.degree_product;
  return g;
}

/// 1 / (2^(1/(2l)) - 1)^2: above this every aliquot cycle of length l is elliptic.
inline double prop63_threshold(std::size_t length) {
  const double root = std::pow(2.0, 1.0 / (2.0 * static_cast<double>(length))) - 1.0;
  return 1.0 / (root * root);
}

inline Prop63Report check_prop63(Apparition& app, const AliquotCycle& cycle) {
  if (cycle.primes.empty()) throw Error(ErrorKind::Precondition, "empty cycle");
  Prop63Report rep;
  rep.product = 1;
  rep.elliptic_cycle = true;
  const auto& ps = cycle.primes;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& info = app.reduction(ps[i]).info;
    if (info.kind != ReductionKind::good) throw Error(ErrorKind::Precondition, "cycle has a bad prime");
    rep.product *= Rational(Integer(static_cast<unsigned long>(info.ns_order)), Integer(static_cast<unsigned long>(ps[i])));
    if (info.ns_order != ps[(i + 1) % ps.size()]) rep.elliptic_cycle = false;
  }
  rep.product.canonicalize();
  rep.min_prime = *std::min_element(ps.begin(), ps.end());
  rep.threshold = prop63_threshold(ps.size());
  rep.threshold_met = static_cast<double>(rep.min_prime) > rep.threshold;
  rep.implication_holds = !(rep.product < 2) || rep.elliptic_cycle;
  return rep;
}

// Property checks over an enumerated set. Each returns human-readable violations; empty means pass.

inline std::vector<std::string> check_closure(const IndexDivisibilitySet& set) {
  std::vector<std::string> bad;
  for (auto m : set.elements) {
    for (auto n : set.elements) {
      if (n < m || m * n > set.bound) continue;
      if (!set.contains(m * n)) bad.push_back(std::to_string(m) + "*" + std::to_string(n) + " missing");
    }
  }
  return bad;
}

/// n in S and prime p | D_n with np <= X gives the arrow n -> np.
inline std::vector<std::string> check_prime_arrows(Apparition& app, const IndexDivisibilitySet& set,
                                                   const std::vector<Arrow>& arr) {
  std::vector<std::string> bad;
  for (auto n : set.elements) {
    for (std::uint64_t p : primes_up_to(std::max<std::uint64_t>(set.bound / n, 1))) {
      if (!app.context().term_divisible_by(n, p)) continue;
      if (!std::binary_search(arr.begin(), arr.end(), Arrow{n, n * p})) {
        bad.push_back(std::to_string(n) + "->" + std::to_string(n * p));
      }
    }
  }
  return bad;
}

/// Generalized aliquot numbers up to X (products of generalized cycles).
inline std::vector<std::uint64_t> generalized_aliquot_numbers(Apparition& app, std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (const auto& c : aliquot_cycles(app, x, true)) {
    bool fits = true;
    std::uint64_t prod = 1;
    for (auto p : c.primes) {
      if (prod > x / p) {
        fits = false;
        break;
      }
      prod *= p;
    }
    if (fits) out.push_back(prod);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Aliquot number d coprime to n with nd <= X gives the arrow n -> nd.
inline std::vector<std::string> check_aliquot_arrows(Apparition& app, const IndexDivisibilitySet& set,
                                                     const std::vector<Arrow>& arr) {
  std::vector<std::string> bad;
  for (auto d : generalized_aliquot_numbers(app, set.bound)) {
    for (auto n : set.elements) {
      if (n * d > set.bound || gcd_u64(n, d) != 1) continue;
      if (!std::binary_search(arr.begin(), arr.end(), Arrow{n, n * d})) {
        bad.push_back(std::to_string(n) + "->" + std::to_string(n * d));
      }
    }
  }
  return bad;
}

/// Multiplying n in S by primes of D_n and aliquot numbers stays in S.
inline std::vector<std::string> check_multiplier_closure(Apparition& app, const IndexDivisibilitySet& set) {
  std::vector<std::string> bad;
  const auto aliquot = generalized_aliquot_numbers(app, set.bound);
  for (auto n : set.elements) {
    std::vector<std::uint64_t> factors = aliquot;
    for (std::uint64_t p : primes_up_to(std::max<std::uint64_t>(set.bound / n, 1))) {
      if (app.context().term_divisible_by(n, p)) factors.push_back(p);
    }
    std::set<std::uint64_t> reach{n};
    std::vector<std::uint64_t> frontier{n};
    while (!frontier.empty()) {
      const std::uint64_t m = frontier.back();
      frontier.pop_back();
      for (auto f : factors) {
        if (m * f <= set.bound && reach.insert(m * f).second) frontier.push_back(m * f);
      }
    }
    for (auto m : reach) {
      if (!set.contains(m)) bad.push_back(std::to_string(m) + " from " + std::to_string(n));
    }
  }
  return bad;
}

/// d | D_n coprime to n with nd <= X: nd is in S and reachable from n along arrows.
inline std::vector<std::string> check_divisor_chains(Apparition& app, const IndexDivisibilitySet& set,
                                                     const std::vector<Arrow>& arr) {
  std::vector<std::string> bad;
  std::map<std::uint64_t, std::vector<std::uint64_t>> out_edges;
  for (const auto& a : arr) out_edges[a.from].push_back(a.to);
  for (auto n : set.elements) {
    for (std::uint64_t d = 2; d <= set.bound / n; ++d) {
      if (gcd_u64(n, d) != 1 || !app.context().term_divisible_by(n, d)) continue;
      const std::uint64_t target = n * d;
      if (!set.contains(target)) {
        bad.push_back(std::to_string(target) + " not in set");
        continue;
      }
      std::set<std::uint64_t> seen{n};
      std::vector<std::uint64_t> stack{n};
      while (!stack.empty() && !seen.count(target)) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto w : out_edges[v]) {
          if (target % w == 0 && seen.insert(w).second) stack.push_back(w);
        }
      }
      if (!seen.count(target)) bad.push_back("no path " + std::to_string(n) + "->" + std::to_string(target));
    }
  }
  return bad;
}

/// Lower bounds on nonstandard weights whose primes are all >= p_min: the number of
/// prime factors nu and the product of the nu smallest primes >= p_min.
struct WeightBound {
  std::uint64_t p_min = 0;
  unsigned nu = 0;
  Integer min_weight;
};

inline WeightBound nonstandard_weight_bound(std::uint64_t p_min) {
  WeightBound wb;
  wb.p_min = p_min;
  const double need = 0.5 * std::log(2.0) / std::log1p(1.0 / std::sqrt(static_cast<double>(p_min)));
  wb.nu = static_cast<unsigned>(std::ceil(need));
  wb.min_weight = 1;
  unsigned taken = 0;
  for (auto p : sieve_primes()) {
    if (taken == wb.nu) break;
    if (p < p_min) continue;
    wb.min_weight *= static_cast<unsigned long>(p);
    ++taken;
  }
  if (taken < wb.nu) throw Error(ErrorKind::Precondition, "p_min too large for the prime sieve");
  return wb;
}

}  // namespace edslab
