#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pcomp/config.hpp"
#include "pcomp/errors.hpp"
#include "pcomp/io.hpp"

using namespace pcomp;
using nlohmann::json;

namespace {

const Window kW6{6, 6};

PointPattern p5() { return PointPattern(kW6, {{1, 5}, {2, 3}, {4, 1}, {3, 4}, {5, 2}}); }

json poisson_config() {
  return json::parse(R"({"window": [1, 1], "seed": 3,
                         "model": {"kind": "poisson", "hazard": {"form": "product", "rate": 1}}})");
}

}  // namespace

TEST(Io, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Io, PatternCsvRoundTrip) {
  const PointPattern p(Window{1, 1}, {{0.1234567890123, 0.9}, {0.5, 1.0 / 3.0}});
  const PointPattern back = pattern_from_csv(pattern_to_csv(p), Window{1, 1});
  ASSERT_EQ(back.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(back.points()[i], p.points()[i]);
  EXPECT_TRUE(pattern_from_csv("x,y\n", Window{1, 1}).empty());
}

TEST(Io, PatternCsvNamesOffendingRows) {
  try {
    pattern_from_csv("x,y\n0.1,0.2\n0.3,0.2\n", Window{1, 1});
    FAIL() << "expected rejection";
  } catch (const StrictSimplicityError& e) {
    EXPECT_NE(std::string(e.what()).find("rows 2 and 3"), std::string::npos) << e.what();
  }
  try {
    pattern_from_csv("x,y\n0.1,0.2\n1.5,0.4\n", Window{1, 1});
    FAIL() << "expected rejection";
  } catch (const StrictSimplicityError& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
  }
}

TEST(Io, CompensatorPathRoundTrip) {
  std::vector<CompensatorEvaluation> path{{{0.5, 0.5}, 0.25, {0.2, 0.05}}, {{1, 1}, 1.0, {0.7, 0.3}}};
  const auto rows = compensator_path_from_csv(compensator_path_to_csv(path));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].t, (Point{1, 1}));
  EXPECT_EQ(rows[0].value, 0.25);
  EXPECT_EQ(rows[0].per_line, path[0].per_line);
}

TEST(Io, GeometryCsv) {
  const auto d = decompose(p5());
  const std::string lines = lines_to_csv(d);
  EXPECT_EQ(lines.rfind("line,x,y\n", 0), 0u);
  EXPECT_NE(lines.find("2,3,4\n"), std::string::npos);
  const std::string stages = stages_to_csv(d);
  EXPECT_NE(stages.find("1,xi_plus,2,5\n"), std::string::npos);
  EXPECT_NE(stages.find("1,xi_plus,4,3\n"), std::string::npos);
}

TEST(Io, SvgGlyphCounts) {
  const auto d = decompose(p5());
  const std::string svg = decomposition_svg(p5(), d);
  auto occurrences = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
    return n;
  };
  EXPECT_EQ(occurrences("class=\"jump\""), 5u);
  EXPECT_GT(occurrences("class=\"join\""), 0u);
}

TEST(Io, ReportRecordRoundTrip) {
  MCReport r;
  r.name = "strong_martingale Z=const";
  r.estimate = 0.001;
  r.std_error = 0.002;
  r.z = 0.5;
  r.n = 100;
  r.sigma = 3;
  r.verdict = Verdict::pass;
  r.seed = 17;
  const auto fields = parse_record(report_record({r, Verdict::pass}));
  EXPECT_EQ(fields.at("name"), r.name);
  EXPECT_EQ(fields.at("verdict"), "pass");
  EXPECT_EQ(fields.at("outcome"), "ok");
  EXPECT_EQ(std::stod(fields.at("stderr")), 0.002);
  EXPECT_EQ(fields.at("seed"), "17");
  EXPECT_EQ(outcome_of({r, Verdict::fail}), Outcome::unexpected);
  r.verdict = Verdict::inconclusive;
  EXPECT_EQ(outcome_of({r, Verdict::pass}), Outcome::inconclusive);
}

TEST(Config, HashStableUnderKeyOrder) {
  const json a = json::parse(R"({"seed": 1, "window": [1, 2]})");
  const json b = json::parse(R"({"window": [1, 2], "seed": 1})");
  const json c = json::parse(R"({"window": [1, 2], "seed": 2})");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Config, ParsesPoissonAndDefaultBattery) {
  const auto c = parse_config(poisson_config());
  EXPECT_EQ(c.model.kind, "poisson");
  EXPECT_TRUE(c.default_battery);
  EXPECT_FALSE(c.tests.empty());
  std::size_t controls = 0;
  for (const auto& t : c.tests) controls += t.expect == Verdict::fail ? 1 : 0;
  EXPECT_GE(controls, 3u);
}

TEST(Config, RejectsUnknownKeysWithPath) {
  json j = poisson_config();
  j["model"]["hazard"]["rat"] = 2;
  try {
    parse_config(j);
    FAIL() << "expected rejection";
  } catch (const ConfigurationError& e) {
    EXPECT_NE(std::string(e.what()).find("/model/hazard"), std::string::npos) << e.what();
  }
}

TEST(Config, RejectsMalformedValues) {
  json j = poisson_config();
  j["window"] = json::array({1});
  EXPECT_THROW(parse_config(j), ConfigurationError);
  j = poisson_config();
  j["model"]["kind"] = "hawkes";
  EXPECT_THROW(parse_config(j), ConfigurationError);
  j = poisson_config();
  j["verify"] = {{"tests", {{{"kind", "avoidance_factorization"}, {"n", -5}}}}};
  EXPECT_THROW(parse_config(j), ConfigurationError);
}

TEST(Config, ParsesEveryLawAndHazardForm) {
  for (const char* law : {R"({"kind":"exponential","rate":2})", R"({"kind":"uniform","low":0,"high":2})",
                          R"({"kind":"weibull","shape":1.5,"scale":1})", R"({"kind":"gamma","shape":2,"scale":0.5})",
                          R"({"kind":"lognormal","mu":0,"sigma":0.5})"}) {
    EXPECT_NO_THROW(parse_law(json::parse(law), "law")) << law;
  }
  const Window w{1, 1};
  EXPECT_NEAR(parse_hazard(json::parse(R"({"form":"zero"})"), w, {}, "h").total(), 0.0, 0.0);
  EXPECT_NEAR(parse_hazard(json::parse(R"({"form":"product","rate":2,"scale":1.5})"), w, {}, "h").total(), 3.0, 1e-14);
  EXPECT_NEAR(parse_hazard(json::parse(R"({"form":"grid","x_mesh":[0,1],"y_mesh":[0,0.5,1],"density":[1,3]})"), w,
                           {}, "h")
                  .total(),
              2.0, 1e-14);
  EXPECT_NEAR(parse_hazard(json::parse(
                               R"({"form":"antiderivative","family":"power_product","c":2,"p":1.5,"density_bound":4.5})"),
                           w, {}, "h")
                  .mass({0.5, 0.5}),
              2.0 * std::pow(0.25, 1.5), 1e-14);
}

TEST(Config, TestSeedsDiffer) {
  EXPECT_NE(test_seed(1, 0), test_seed(1, 1));
  EXPECT_EQ(test_seed(1, 0), test_seed(1, 0));
}

TEST(Io, WriteAtomicCreatesDirectories) {
  const auto dir = std::filesystem::temp_directory_path() / "pcomp_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_atomic(dir / "a.txt", "hello");
  EXPECT_EQ(read_text(dir / "a.txt"), "hello");
  EXPECT_FALSE(std::filesystem::exists(dir / "a.txt.tmp"));
  EXPECT_THROW(read_text(dir / "missing.txt"), IoError);
  std::filesystem::remove_all(dir.parent_path());
}
