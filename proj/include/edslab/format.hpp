#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "edslab/apparition.hpp"
#include "edslab/bigint.hpp"
#include "edslab/curve.hpp"
#include "edslab/divgraph.hpp"
#include "edslab/eds.hpp"
#include "edslab/error.hpp"
#include "json.hpp"

namespace edslab {

namespace detail {

/// Cursor over a literal; errors carry the 0-based offset where parsing stopped.
class LiteralReader {
 public:
  LiteralReader(std::string_view text, const char* what) : text_(text), what_(what) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
  }

  Integer integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    std::string s(text_.substr(start, pos_ - start));
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
  }

  Rational rational() {
    Integer num = integer();
    Integer den = 1;
    if (peek('/')) {
      ++pos_;
      const std::size_t at = pos_;
      den = integer();
      if (den == 0) {
        pos_ = at;
        fail("zero denominator");
      }
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, std::string(what_) + " '" + std::string(text_) + "': " + msg + " at position " +
                                      std::to_string(pos_));
  }

 private:
  std::string_view text_;
  const char* what_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// "[a1,a2,a3,a4,a6]"
inline WeierstrassCurve parse_curve(std::string_view text, bool allow_singular = false) {
  detail::LiteralReader r(text, "curve literal");
  std::array<Integer, 5> a;
  r.expect('[');
  for (std::size_t i = 0; i < 5; ++i) {
    if (i > 0) r.expect(',');
    a[i] = r.integer();
  }
  r.expect(']');
  r.expect_end();
  return WeierstrassCurve::from_array(a, allow_singular);
}

/// "(x,y)" with x, y integers or num/den; "O" for the identity.
inline RationalPoint parse_point(std::string_view text) {
  detail::LiteralReader r(text, "point literal");
  if (r.peek('O')) {
    r.expect('O');
    r.expect_end();
    return RationalPoint::at_infinity();
  }
  r.expect('(');
  Rational x = r.rational();
  r.expect(',');
  Rational y = r.rational();
  r.expect(')');
  r.expect_end();
  return RationalPoint::affine(std::move(x), std::move(y));
}

/// "n<TAB>D_n" per line, or D_n mod m when a modulus is given.
inline std::string format_sequence(EdsContext& ctx, std::uint64_t count, const std::optional<Integer>& modulus) {
  std::ostringstream out;
  for (std::uint64_t n = 1; n <= count; ++n) {
    const Integer value = modulus ? mod_floor(ctx.term(n), *modulus) : ctx.term(n);
    out << n << '\t' << to_decimal(value) << '\n';
  }
  return out.str();
}

inline std::string join(const std::vector<std::uint64_t>& xs, const char* sep = " ") {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? sep : "") << xs[i];
  return out.str();
}

/// Vertices ascending, edges in arrow order, labels "w=<weight>".
inline std::string to_dot(const IndexDivisibilitySet& set, const std::vector<Arrow>& arr) {
  std::ostringstream out;
  out << "digraph S {\n";
  for (auto n : set.elements) out << "  " << n << ";\n";
  for (const auto& a : arr) out << "  " << a.from << " -> " << a.to << " [label=\"w=" << a.weight() << "\"];\n";
  out << "}\n";
  return out.str();
}

inline nlohmann::ordered_json classification_json(const Arrow& a, const ArrowClassification* c, const Error* err) {
  nlohmann::ordered_json j;
  j["from"] = a.from;
  j["to"] = a.to;
  j["weight"] = a.weight();
  if (err) {
    j["kind"] = "unclassifiable";
    j["error"] = err->what();
    return j;
  }
  if (!c) return j;
  j["kind"] = to_string(c->kind);
  if (c->kind == ArrowKind::nonstandard) {
    j["t"] = c->t;
    j["p0"] = c->p0;
    j["lhs"] = to_decimal(c->lhs);
    j["bound_ok"] = c->bound_ok;
    j["hasse_product"] = c->hasse_product;
    j["weight_filter_ok"] = c->weight_filter_ok;
    j["neron_caveat"] = c->neron_caveat;
  }
  if (!c->regular_context) j["regular_context"] = false;
  return j;
}

struct GraphReportOptions {
  bool classify = true;
  bool generalized = false;
  unsigned jobs = 1;
};

/// {bound, elements, arrows, cycles, anomalous}
inline nlohmann::ordered_json graph_report(Apparition& app, std::uint64_t bound, const GraphReportOptions& opt = {}) {
  const auto set = enumerate_set(app, bound, opt.jobs);
  const auto arr = arrows(set);
  nlohmann::ordered_json j;
  j["bound"] = bound;
  j["elements"] = set.elements;
  j["arrows"] = nlohmann::ordered_json::array();
  for (const auto& a : arr) {
    if (!opt.classify) {
      j["arrows"].push_back(classification_json(a, nullptr, nullptr));
      continue;
    }
    try {
      const auto c = classify_arrow(app, a);
      j["arrows"].push_back(classification_json(a, &c, nullptr));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnclassifiableArrow && e.kind() != ErrorKind::SingularReduction) throw;
      j["arrows"].push_back(classification_json(a, nullptr, &e));
    }
  }
  j["cycles"] = nlohmann::ordered_json::array();
  for (const auto& c : aliquot_cycles(app, bound, opt.generalized)) j["cycles"].push_back(c.primes);
  const auto& curve = app.context().curve();
  j["anomalous"] = curve.is_singular() ? std::vector<std::uint64_t>{} : anomalous_primes(curve, bound, opt.jobs);
  return j;
}

inline nlohmann::ordered_json regularity_json(const RegularityReport& r) {
  nlohmann::ordered_json j;
  j["IR1_good_at_2"] = r.ir1_good_at_two;
  j["IR2_count_at_2_is_4"] = r.ir2_two_count_is_four;
  j["IR3_r2_is_4"] = r.ir3_rank_two_is_four;
  j["IR4_D2_odd"] = r.ir4_d2_odd;
  j["IR5_ord2_D4_is_1"] = r.ir5_ord2_d4_is_one;
  j["two_regular"] = r.two_regular;
  nlohmann::ordered_json bad = nlohmann::ordered_json::object();
  for (const auto& [p, ok] : r.nonsingular_at_bad) bad[std::to_string(p)] = ok;
  j["nonsingular_at_bad"] = bad;
  j["disc_fully_factored"] = r.disc_fully_factored;
  j["regular"] = r.regular;
  return j;
}

}  // namespace edslab
