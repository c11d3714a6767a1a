#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "edslab/apparition.hpp"
#include "edslab/construct.hpp"
#include "edslab/curve.hpp"
#include "edslab/divgraph.hpp"
#include "edslab/eds.hpp"
#include "edslab/format.hpp"
#include "edslab/lucas.hpp"
#include "json.hpp"

namespace edslab {

enum class OutputFormat { text, json, dot };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "dot") return OutputFormat::dot;
  throw Error(ErrorKind::Parse, "unknown format '" + s + "' (text, json, dot)");
}

struct RunConfig {
  std::string curve;
  std::string point;
  std::uint64_t bound = 0;
  std::optional<Integer> modulus;
  OutputFormat format = OutputFormat::text;
  bool generalized = false;
  unsigned jobs = 1;
  bool allow_singular = false;
  /// Skip the regular-context fast path and test n | D_n from valuations.
  bool force_exact = false;
  EdsOptions eds;
};

/// Curve and point validated against the curve module before any work.
struct Session {
  EdsContext ctx;
  Apparition app;

  explicit Session(const RunConfig& cfg)
      : ctx(parse_curve(cfg.curve, cfg.allow_singular), parse_point(cfg.point), cfg.eds), app(ctx) {}
  Session(const Session&) = delete;
};

namespace detail {

inline void require_bound(const RunConfig& cfg) {
  if (cfg.bound < 1) throw Error(ErrorKind::Precondition, "--bound is required");
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

/// Primes of |disc| found by trial division plus any cofactor left over.
inline std::pair<std::vector<std::uint64_t>, Integer> disc_primes(const Integer& disc) {
  std::vector<std::uint64_t> ps;
  Integer rest = abs_value(disc);
  for (auto p32 : sieve_primes()) {
    if (rest == 1) break;
    const Integer p(static_cast<unsigned long>(p32));
    if (!divides(p, rest)) continue;
    while (divides(p, rest)) rest /= p;
    ps.push_back(p32);
  }
  if (rest > 1 && rest.fits_ulong_p() && rest.get_ui() <= kSieveLimit * kSieveLimit) {
    ps.push_back(rest.get_ui());
    rest = 1;
  }
  return {ps, rest};
}

}  // namespace detail

inline std::string cmd_curve_info(const RunConfig& cfg) {
  Session s(cfg);
  const auto& curve = s.ctx.curve();
  nlohmann::ordered_json j;
  j["curve"] = curve.literal();
  j["point"] = s.ctx.point().literal();
  j["b"] = {to_decimal(curve.b2()), to_decimal(curve.b4()), to_decimal(curve.b6()), to_decimal(curve.b8())};
  j["c4"] = to_decimal(curve.c4());
  j["c6"] = to_decimal(curve.c6());
  j["disc"] = to_decimal(curve.disc());
  j["singular"] = curve.is_singular();
  if (!curve.is_singular()) {
    j["j"] = to_decimal(*curve.j_invariant());
    j["minimality"] = to_string(minimality_heuristic(curve));
    const auto [ps, rest] = detail::disc_primes(curve.disc());
    nlohmann::ordered_json bad = nlohmann::ordered_json::object();
    for (auto p : ps) bad[std::to_string(p)] = to_string(s.app.reduction(p).info.kind);
    j["bad_reduction"] = bad;
    if (rest > 1) j["unfactored_cofactor"] = to_decimal(rest);
  } else {
    const auto [sx, sy] = curve.singular_point();
    j["singular_point"] = RationalPoint::affine(sx, sy).literal();
  }
  j["D1"] = to_decimal(s.ctx.term(1));
  j["regularity"] = regularity_json(s.app.regularity());
  if (cfg.format == OutputFormat::json) return detail::dump(j);
  std::ostringstream out;
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << k << ":\n";
      for (const auto& [k2, v2] : v.items()) {
        out << "  " << k2 << ": " << (v2.is_string() ? v2.get<std::string>() : v2.dump()) << "\n";
      }
    } else {
      out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  return out.str();
}

inline std::string cmd_eds(const RunConfig& cfg) {
  detail::require_bound(cfg);
  Session s(cfg);
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["curve"] = s.ctx.curve().literal();
    j["point"] = s.ctx.point().literal();
    if (cfg.modulus) j["mod"] = to_decimal(*cfg.modulus);
    j["terms"] = nlohmann::ordered_json::array();
    for (std::uint64_t n = 1; n <= cfg.bound; ++n) {
      const Integer v = cfg.modulus ? mod_floor(s.ctx.term(n), *cfg.modulus) : s.ctx.term(n);
      j["terms"].push_back(to_decimal(v));
    }
    return detail::dump(j);
  }
  return format_sequence(s.ctx, cfg.bound, cfg.modulus);
}

inline IndexDivisibilitySet session_set(Session& s, const RunConfig& cfg) {
  if (!cfg.force_exact) return enumerate_set(s.app, cfg.bound, cfg.jobs);
  detail::check_bound(cfg.bound, kDefaultEnumerationLimit);
  IndexDivisibilitySet set;
  set.bound = cfg.bound;
  set.elements.clear();
  for (std::uint64_t n = 1; n <= cfg.bound; ++n) {
    if (s.app.index_divisible(n, true)) set.elements.push_back(n);
  }
  return set;
}

inline std::string cmd_divset(const RunConfig& cfg) {
  detail::require_bound(cfg);
  Session s(cfg);
  const auto set = session_set(s, cfg);
  switch (cfg.format) {
    case OutputFormat::json: {
      nlohmann::ordered_json j;
      j["bound"] = set.bound;
      j["elements"] = set.elements;
      return detail::dump(j);
    }
    case OutputFormat::dot: return to_dot(set, arrows(set));
    case OutputFormat::text: break;
  }
  return join(set.elements) + "\n";
}

inline std::string cmd_arrows(const RunConfig& cfg) {
  detail::require_bound(cfg);
  Session s(cfg);
  if (cfg.format == OutputFormat::json && !cfg.force_exact) {
    return detail::dump(graph_report(s.app, cfg.bound, {true, cfg.generalized, cfg.jobs}));
  }
  const auto set = session_set(s, cfg);
  const auto arr = arrows(set);
  if (cfg.format == OutputFormat::dot) return to_dot(set, arr);
  std::ostringstream out;
  for (const auto& a : arr) {
    out << a.from << " -> " << a.to << "\tw=" << a.weight() << "\t";
    try {
      const auto c = classify_arrow(s.app, a);
      out << to_string(c.kind);
      if (c.kind == ArrowKind::nonstandard) out << " t=" << c.t << " p0=" << c.p0 << " lhs=" << to_decimal(c.lhs);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnclassifiableArrow && e.kind() != ErrorKind::SingularReduction) throw;
      out << "unclassifiable (" << e.what() << ")";
    }
    out << "\n";
  }
  return out.str();
}

inline std::string cmd_aliquot(const RunConfig& cfg) {
  detail::require_bound(cfg);
  Session s(cfg);
  const auto cycles = aliquot_cycles(s.app, cfg.bound, cfg.generalized);
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["bound"] = cfg.bound;
    j["generalized"] = cfg.generalized;
    j["cycles"] = nlohmann::ordered_json::array();
    for (const auto& c : cycles) j["cycles"].push_back(c.primes);
    return detail::dump(j);
  }
  std::ostringstream out;
  for (const auto& c : cycles) out << "(" << join(c.primes, ",") << ")\n";
  return out.str();
}

inline std::string cmd_anomalous(const RunConfig& cfg) {
  detail::require_bound(cfg);
  const auto curve = parse_curve(cfg.curve, cfg.allow_singular);
  if (curve.is_singular()) throw Error(ErrorKind::Precondition, "anomalous primes need a non-singular curve");
  const auto ps = anomalous_primes(curve, cfg.bound, cfg.jobs);
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["bound"] = cfg.bound;
    j["anomalous"] = ps;
    return detail::dump(j);
  }
  return join(ps) + "\n";
}

inline std::string cmd_classify(const RunConfig& cfg, std::uint64_t from, std::uint64_t to) {
  Session s(cfg);
  const Arrow a{from, to};
  if (!s.app.index_divisible(from, cfg.force_exact) || !s.app.index_divisible(to, cfg.force_exact)) {
    throw Error(ErrorKind::Precondition, "both ends must lie in S(D)");
  }
  for (auto k : divisors(to)) {
    if (k != from && k != to && k % from == 0 && s.app.index_divisible(k, cfg.force_exact)) {
      throw Error(ErrorKind::Precondition, std::to_string(k) + " lies strictly between; not an arrow");
    }
  }
  const auto c = classify_arrow(s.app, a);
  nlohmann::ordered_json j = classification_json(a, &c, nullptr);
  if (c.kind == ArrowKind::nonstandard && gcd_u64(from, a.weight()) == 1) {
    const auto g = gd_graph(s.app, from, a.weight());
    nlohmann::ordered_json gj;
    gj["vertices"] = g.vertices;
    gj["arrows"] = nlohmann::ordered_json::array();
    for (auto [p, q] : g.arrows) gj["arrows"].push_back({p, q});
    gj["connected"] = g.connected;
    gj["rank_ratio_product"] = to_decimal(g.rank_ratio_product);
    gj["degree_product"] = to_decimal(g.degree_product);
    gj["identity_holds"] = g.identity_holds;
    j["graph"] = gj;
  }
  if (cfg.format == OutputFormat::json) return detail::dump(j);
  std::ostringstream out;
  for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  return out.str();
}

/// Lucas terms (terms > 0) or the divisibility set with its Smyth comparison.
inline std::string cmd_lucas(const Integer& a, const Integer& b, std::uint64_t bound, std::uint64_t terms,
                             OutputFormat format) {
  nlohmann::ordered_json j;
  j["a"] = to_decimal(a);
  j["b"] = to_decimal(b);
  if (terms > 0) {
    const auto ls = lucas_terms(a, b, terms);
    if (format != OutputFormat::json) {
      std::ostringstream out;
      for (std::size_t i = 0; i < ls.size(); ++i) out << i + 1 << '\t' << to_decimal(ls[i]) << '\n';
      return out.str();
    }
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& l : ls) j["terms"].push_back(to_decimal(l));
    return detail::dump(j);
  }
  if (bound < 1) throw Error(ErrorKind::Precondition, "--bound or --terms is required");
  const auto set = lucas_divset(a, b, bound);
  const auto arr = arrows(set);
  if (format == OutputFormat::dot) return to_dot(set, arr);
  const bool degenerate = a * a - 4 * b == 0;
  SmythDiff diff;
  if (!degenerate) diff = compare_smyth(a, b, bound);
  if (format == OutputFormat::json) {
    j["bound"] = bound;
    j["elements"] = set.elements;
    j["arrows"] = nlohmann::ordered_json::array();
    for (const auto& x : arr) j["arrows"].push_back({{"from", x.from}, {"to", x.to}, {"weight", x.weight()}});
    j["degenerate"] = degenerate;
    auto list = [](const std::vector<Arrow>& xs) {
      nlohmann::ordered_json out = nlohmann::ordered_json::array();
      for (const auto& x : xs) out.push_back({x.from, x.to});
      return out;
    };
    j["smyth_missing"] = list(diff.missing);
    j["smyth_unexpected"] = list(diff.unexpected);
    return detail::dump(j);
  }
  std::ostringstream out;
  out << join(set.elements) << "\n";
  if (degenerate) {
    out << "smyth: degenerate (a^2 - 4b = 0)\n";
  } else {
    out << "smyth: " << (diff.empty() ? "agrees" : "differs") << "\n";
    for (const auto& x : diff.missing) out << "  missing " << x.from << " -> " << x.to << "\n";
    for (const auto& x : diff.unexpected) out << "  unexpected " << x.from << " -> " << x.to << "\n";
  }
  return out.str();
}

inline nlohmann::ordered_json construction_json(const WeierstrassCurve& curve, const RationalPoint& point,
                                                const ConstructionReport& rep) {
  nlohmann::ordered_json j;
  j["curve"] = curve.literal();
  j["point"] = point.literal();
  j["ok"] = rep.ok;
  if (!rep.failure.empty()) j["failure"] = rep.failure;
  j["nontorsion"] = rep.nontorsion;
  j["primes"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    j["primes"].push_back({{"p", c.p},
                           {"good_reduction", c.good_reduction},
                           {"group_order", c.group_order},
                           {"point_order", c.point_order},
                           {"matches", c.matches}});
  }
  j["arrow_target"] = rep.arrow_target;
  j["arrow_check_applicable"] = rep.arrow_check_applicable;
  if (rep.arrow_check_applicable) {
    j["target_in_set"] = rep.target_in_set;
    j["no_intermediate"] = rep.no_intermediate;
  }
  return j;
}

/// Curve literal, point literal, then the JSON verification report.
inline std::string cmd_construct(const std::vector<PrescribedDatum>& data, bool symmetric, OutputFormat format) {
  const auto result = crt_curve(data, symmetric);
  const auto rep = verify_construction(result);
  const auto j = construction_json(result.curve, result.point, rep);
  if (format == OutputFormat::json) return detail::dump(j);
  return result.curve.literal() + "\n" + result.point.literal() + "\n" + detail::dump(j);
}

}  // namespace edslab
