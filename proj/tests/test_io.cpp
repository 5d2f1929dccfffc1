#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "spinthermo/analysis.hpp"
#include "spinthermo/io.hpp"

using namespace spinthermo;
using io::json;

namespace {
io::RunMetadata sample_meta() {
  io::RunMetadata m;
  m.command = "surface";
  m.parameters = {{"model", "bures"}, {"steps1", 5}, {"min1", -2.5}};
  m.max_quadrature_error = 3.25e-11;
  m.failures = {3, 7};
  return m;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}
}  // namespace

TEST(Format, RoundTripDigits) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) EXPECT_EQ(std::stod(io::format_real(v)), v);
  EXPECT_EQ(io::format_display(std::tanh(1.0)), "0.761594155955765");
}

TEST(Csv, SurfaceLayout) {
  const GridSpec spec{-1, 1, 3, -2, 2, 5};
  const SurfaceGrid g = analysis::surface(Model::semiclassical, Quantity::mean2, spec);
  const io::CsvDocument doc = io::surface_csv(g, sample_meta());
  EXPECT_EQ(doc.header, (std::vector<std::string>{"beta1", "beta2", "value"}));
  ASSERT_EQ(doc.rows.size(), 15u);
  EXPECT_EQ(doc.rows[0][0], -1.0);
  EXPECT_EQ(doc.rows[1][1], -1.0);  // beta2 varies fastest
  EXPECT_EQ(doc.rows[5][0], 0.0);
  std::ostringstream os;
  io::write_csv(os, doc);
  const std::string text = os.str();
  EXPECT_EQ(text.rfind("# tool: spinthermo", 0), 0u);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_NE(text.find("# failures: 2 3 7\n"), std::string::npos);
}

TEST(Csv, ReparseReserializeIsByteIdentical) {
  const GridSpec spec{-3, 3, 4, -3, 3, 6};
  const SurfaceGrid g = analysis::surface(Model::bures, Quantity::cov, spec);
  std::ostringstream first;
  io::write_csv(first, io::surface_csv(g, sample_meta()));
  std::istringstream in(first.str());
  const io::CsvDocument back = io::read_csv(in);
  std::ostringstream second;
  io::write_csv(second, back);
  EXPECT_EQ(first.str(), second.str());
  for (std::size_t k = 0; k < g.values.size(); ++k) EXPECT_EQ(back.rows[k][2], g.values[k]);
}

TEST(Csv, CurveLayoutAndReparse) {
  const std::vector<double> betas = {-1, 0, 1};
  const io::CsvDocument doc = io::curve_csv(analysis::curve_difference(betas), sample_meta());
  EXPECT_EQ(doc.header, (std::vector<std::string>{"beta", "brillouin", "alternative", "difference"}));
  EXPECT_EQ(doc.rows[1], (std::vector<double>{0, 0, 0, 0}));
  std::ostringstream a;
  io::write_csv(a, doc);
  std::istringstream in(a.str());
  std::ostringstream b;
  io::write_csv(b, io::read_csv(in));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Csv, MalformedInputRejected) {
  std::istringstream bad("beta1,beta2,value\n1,2\n");
  EXPECT_THROW(io::read_csv(bad), std::runtime_error);
  std::istringstream junk("a,b\n1,x\n");
  EXPECT_THROW(io::read_csv(junk), std::exception);
}

TEST(Json, SurfaceObjectAndRoundTrip) {
  const GridSpec spec{-1, 1, 3, -1, 1, 3};
  const SurfaceGrid g = analysis::surface(Model::difference, Quantity::var1, spec);
  const json j = io::surface_json(g, sample_meta());
  EXPECT_TRUE(j.contains("metadata"));
  EXPECT_TRUE(j.contains("spec"));
  ASSERT_TRUE(j["values"].is_array());
  EXPECT_EQ(j["values"].size(), 9u);
  EXPECT_TRUE(j["values"][4].is_number());
  EXPECT_EQ(j["metadata"]["version"], io::kToolVersion);
  EXPECT_FALSE(j["metadata"].contains("duration_seconds"));
  const std::string text = j.dump(2);
  EXPECT_EQ(json::parse(text).dump(2), text);
  EXPECT_EQ(j["values"][4].get<double>(), g.values[4]);
}

TEST(Json, ExtremumAndEq15) {
  const json e = io::extremum_json(analysis::find_max_difference(), sample_meta());
  EXPECT_NEAR(e["report"]["argmax"].get<double>(), 1.45489, 1e-3);
  EXPECT_EQ(json::parse(e.dump(2)).dump(2), e.dump(2));

  const io::Eq15Report r = io::eq15_report({0, 0, 1}, {});
  EXPECT_TRUE(r.direct_matches());
  const json q = io::eq15_json(r, sample_meta());
  EXPECT_EQ(q["report"]["verdict"], r.verdict());
  for (const char* k : {"paper", "direct", "full3d"}) EXPECT_TRUE(q["report"][k]["value"].is_number());
  EXPECT_EQ(json::parse(q.dump(2)).dump(2), q.dump(2));
}

TEST(Json, TimingOnlyWhenRequested) {
  io::RunMetadata m = sample_meta();
  m.duration_seconds = 1.5;
  EXPECT_EQ(m.to_json()["duration_seconds"], 1.5);
  EXPECT_EQ(m.comment_lines().back(), "duration_seconds: 1.5");
}

TEST(Svg, Contract) {
  std::vector<double> betas;
  for (int i = 0; i <= 40; ++i) betas.push_back(-5 + 0.25 * i);
  const std::string svg = io::curve_svg(analysis::curve_difference(betas));
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(svg.find("width=\"800\" height=\"600\""), std::string::npos);
  EXPECT_NE(svg.find(">β</text>"), std::string::npos);
  EXPECT_NE(svg.find(">−E</text>"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
}
