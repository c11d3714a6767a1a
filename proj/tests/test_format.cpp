#include <gtest/gtest.h>

#include "edslab/commands.hpp"

using namespace edslab;
using nlohmann::ordered_json;

namespace {

std::string parse_message(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    return e.what();
  }
  ADD_FAILURE() << "no parse error";
  return {};
}

RunConfig config(std::string curve, std::string point, std::uint64_t bound) {
  RunConfig cfg;
  cfg.curve = std::move(curve);
  cfg.point = std::move(point);
  cfg.bound = bound;
  return cfg;
}

}  // namespace

TEST(Literals, Curve) {
  EXPECT_EQ(parse_curve("[0,0,1,-1,0]"), WeierstrassCurve(0, 0, 1, -1, 0));
  EXPECT_EQ(parse_curve(" [ 0, +0 ,1, -1,0 ] "), WeierstrassCurve(0, 0, 1, -1, 0));
  EXPECT_EQ(parse_curve("[0,0,0,0,123456789012345678901234567890]").a6(), Integer("123456789012345678901234567890"));
  EXPECT_TRUE(parse_curve("[3,2,3,1,0]", true).is_singular());
  try {
    parse_curve("[3,2,3,1,0]");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Literals, CurveErrorsCarryThePosition) {
  EXPECT_NE(parse_message([] { parse_curve("[0,0,1,-1]"); }).find("expected ',' at position 9"), std::string::npos);
  EXPECT_NE(parse_message([] { parse_curve("[0,0,1,x,0]"); }).find("expected an integer at position 7"),
            std::string::npos);
  EXPECT_NE(parse_message([] { parse_curve("0,0,1,-1,0]"); }).find("position 0"), std::string::npos);
  EXPECT_NE(parse_message([] { parse_curve("[0,0,1,-1,0]x"); }).find("trailing characters at position 12"),
            std::string::npos);
  EXPECT_NE(parse_message([] { parse_curve(""); }).find("position 0"), std::string::npos);
}

TEST(Literals, Point) {
  const auto p = parse_point("(1/4,-5/8)");
  EXPECT_EQ(p.x, Rational(1, 4));
  EXPECT_EQ(p.y, Rational(-5, 8));
  EXPECT_FALSE(p.is_integral());
  EXPECT_EQ(parse_point("(2/4, 6/3)").x, Rational(1, 2));
  EXPECT_EQ(parse_point("(2/4, 6/3)").y, 2);
  EXPECT_TRUE(parse_point(" O ").identity);
  EXPECT_EQ(parse_point("(0,0)").literal(), "(0,0)");
  EXPECT_NE(parse_message([] { parse_point("(1/0,2)"); }).find("zero denominator at position 3"), std::string::npos);
  EXPECT_NE(parse_message([] { parse_point("(1,2"); }).find("expected ')' at position 4"), std::string::npos);
  EXPECT_NE(parse_message([] { parse_point("(1;2)"); }).find("position 2"), std::string::npos);
  EXPECT_NE(parse_message([] { parse_point("O(1,2)"); }).find("trailing"), std::string::npos);
}

TEST(Output, Sequence) {
  EdsContext ctx(WeierstrassCurve(0, 0, 1, -1, 0), RationalPoint::affine(0, 0));
  EXPECT_EQ(format_sequence(ctx, 5, std::nullopt), "1\t1\n2\t1\n3\t1\n4\t1\n5\t2\n");
  EXPECT_EQ(format_sequence(ctx, 14, Integer(5)).substr(0, 6), "1\t1\n2\t");
  const auto lines = format_sequence(ctx, 14, Integer(5));
  EXPECT_NE(lines.find("\n14\t4\n"), std::string::npos);  // 129 mod 5
}

TEST(Output, Dot) {
  IndexDivisibilitySet s;
  s.bound = 30;
  s.elements = {1, 6, 30};
  const auto dot = to_dot(s, arrows(s));
  EXPECT_EQ(dot, "digraph S {\n  1;\n  6;\n  30;\n  1 -> 6 [label=\"w=6\"];\n  6 -> 30 [label=\"w=5\"];\n}\n");
}

TEST(Output, GraphReportSchema) {
  EdsContext ctx(WeierstrassCurve(2, 1, 1, 7, 4), RationalPoint::affine(4, 7));
  Apparition app(ctx);
  const auto j = graph_report(app, 30);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"bound", "elements", "arrows", "cycles", "anomalous"}));
  EXPECT_EQ(j["bound"], 30);
  // 13 is anomalous on this curve
  EXPECT_EQ(j["elements"], ordered_json::parse("[1, 13, 30]"));
  ASSERT_EQ(j["arrows"].size(), 2u);
  EXPECT_EQ(j["arrows"][0]["kind"], "aliquot_number");
  EXPECT_EQ(j["cycles"], ordered_json::parse("[[13]]"));
  EXPECT_EQ(j["anomalous"], ordered_json::parse("[13]"));
  const auto& a = j["arrows"][1];
  EXPECT_EQ(a["kind"], "nonstandard");
  EXPECT_EQ(a["lhs"], "3");
  EXPECT_EQ(a["t"], 1);
  EXPECT_EQ(a["p0"], 2);
  EXPECT_TRUE(a["bound_ok"].get<bool>());
  for (const char* k : {"from", "to", "weight", "kind", "t", "p0", "lhs", "bound_ok", "hasse_product",
                        "weight_filter_ok", "neron_caveat"}) {
    EXPECT_TRUE(a.contains(k)) << k;
  }
  EXPECT_FALSE(a.contains("regular_context"));
}

TEST(Output, UnclassifiableArrowsAreReportedNotThrown) {
  EdsContext ctx(WeierstrassCurve(0, 1, 1, 0, 0), RationalPoint::affine(0, 0));
  Apparition app(ctx);
  const auto j = graph_report(app, 100);
  bool seen = false;
  for (const auto& a : j["arrows"]) {
    if (a["from"] == 10 && a["to"] == 30) {
      seen = true;
      EXPECT_EQ(a["kind"], "unclassifiable");
      EXPECT_NE(a["error"].get<std::string>().find("2p"), std::string::npos);
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Output, ReportDoesNotDependOnJobs) {
  EdsContext c1(WeierstrassCurve(0, 0, 1, -1, 0), RationalPoint::affine(0, 0));
  EdsContext c2(WeierstrassCurve(0, 0, 1, -1, 0), RationalPoint::affine(0, 0));
  Apparition a1(c1), a2(c2);
  EXPECT_EQ(graph_report(a1, 2000, {true, false, 1}).dump(), graph_report(a2, 2000, {true, false, 6}).dump());
}

TEST(Output, RegularityJson) {
  EdsContext ctx(WeierstrassCurve(0, 0, 1, -1, 0), RationalPoint::affine(0, 0));
  Apparition app(ctx);
  const auto j = regularity_json(app.regularity());
  EXPECT_TRUE(j["regular"].get<bool>());
  EXPECT_FALSE(j["IR2_count_at_2_is_4"].get<bool>());
  EXPECT_TRUE(j["nonsingular_at_bad"]["37"].get<bool>());
}

TEST(Commands, FormatNames) {
  EXPECT_EQ(parse_format("dot"), OutputFormat::dot);
  EXPECT_NE(parse_message([] { parse_format("yaml"); }).find("yaml"), std::string::npos);
}

TEST(Commands, DivsetAndClassify) {
  auto cfg = config("[0,0,1,-1,0]", "(0,0)", 100);
  EXPECT_EQ(cmd_divset(cfg), "1 40 53 63 80\n");
  cfg.force_exact = true;
  EXPECT_EQ(cmd_divset(cfg), "1 40 53 63 80\n");

  auto r = config("[2,1,1,7,4]", "(4,7)", 0);
  r.format = OutputFormat::json;
  const auto j = ordered_json::parse(cmd_classify(r, 1, 30));
  EXPECT_EQ(j["kind"], "nonstandard");
  EXPECT_TRUE(j["graph"]["identity_holds"].get<bool>());
  try {
    cmd_classify(r, 1, 60);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Commands, TorsionPointIsRejectedBeforeWork) {
  auto cfg = config("[0,0,0,0,1]", "(2,3)", 10);
  try {
    cmd_eds(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TorsionPoint);
  }
}
