#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "eit/config.hpp"
#include "eit/error.hpp"

using namespace eit;

namespace {

constexpr const char* kTwoLayer = R"(
[domain]
shape = "disk"
radius = 1.0

[[regions]]
kind = "band"
r_out = 0.6
c = 2.0

[[regions]]
kind = "band"
r_in = 0.6
c = 1.0

[obstacle]
center = [0.0, 0.0]
radius = 0.25
bc = "impedance"
lambda = [0.5, 0.0]

[measurement]
gamma_arc = [-1.0, 1.0]

[mesh]
h = 0.04
refine = 1

[probe]
j_values = [4, 8, 16]
tau = 1e-5
)";

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an eit::Error";
  return Errc::InvalidArgument;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST(ScenarioConfig, ParsesEveryTable) {
  const auto c = parse_scenario_config(kTwoLayer);
  const auto& s = c.scenario;
  ASSERT_EQ(s.regions.size(), 2u);
  EXPECT_EQ(s.regions[0].conductivity, 2.0);
  EXPECT_EQ(std::get<BandRegion>(s.regions[1].shape).r_in, 0.6);
  ASSERT_TRUE(s.obstacle.has_value());
  EXPECT_EQ(s.obstacle->radius, 0.25);
  EXPECT_EQ(std::get<Impedance>(s.obstacle_bc).lambda, Complex(0.5, 0.0));
  EXPECT_EQ(s.gamma_arc.begin, -1.0);
  EXPECT_EQ(s.gamma_arc.end, 1.0);
  EXPECT_EQ(c.mesh.h, 0.04);
  EXPECT_EQ(c.mesh.refine, 1);
  EXPECT_EQ(c.probe.j_values, (std::vector<int>{4, 8, 16}));
  EXPECT_EQ(c.probe.tau, 1e-5);
  EXPECT_EQ(c.probe.delta, 0.5);
  EXPECT_FALSE(c.unknown_region.has_value());
}

TEST(ScenarioConfig, FullArcAndDefaults) {
  auto text = replace(kTwoLayer, "gamma_arc = [-1.0, 1.0]", "gamma_arc = \"full\"");
  text = replace(text, "[mesh]\nh = 0.04\nrefine = 1\n", "");
  const auto c = parse_scenario_config(text);
  EXPECT_TRUE(c.scenario.gamma_arc.is_full());
  EXPECT_EQ(c.mesh.h, 0.05);
  EXPECT_EQ(c.mesh.refine, 0);
}

TEST(ScenarioConfig, UnknownRegionFlag) {
  const auto c = parse_scenario_config(replace(kTwoLayer, "r_in = 0.6\nc = 1.0", "r_in = 0.6\nc = 1.0\nunknown = true"));
  ASSERT_TRUE(c.unknown_region.has_value());
  EXPECT_EQ(*c.unknown_region, 1u);
}

TEST(ScenarioConfig, RejectsMalformedInput) {
  EXPECT_EQ(error_of([] { parse_scenario_config("[domain\n"); }), Errc::Config);
  EXPECT_EQ(error_of([] { parse_scenario_config(replace(kTwoLayer, "[measurement]\ngamma_arc = [-1.0, 1.0]", "")); }),
            Errc::Config);
  EXPECT_EQ(error_of([] { parse_scenario_config(replace(kTwoLayer, "radius = 1.0", "radius = 1.0\ncolour = 3")); }),
            Errc::Config);
  EXPECT_EQ(error_of([] { parse_scenario_config(replace(kTwoLayer, "kind = \"band\"", "kind = \"blob\"")); }),
            Errc::Config);
  EXPECT_EQ(error_of([] { parse_scenario_config(replace(kTwoLayer, "c = 2.0", "c = \"two\"")); }), Errc::Config);
  EXPECT_EQ(error_of([] { parse_scenario_config(replace(kTwoLayer, "bc = \"impedance\"", "bc = \"hard\"")); }),
            Errc::Config);
  // Parses, but the bands leave a gap.
  EXPECT_EQ(error_of([] { parse_scenario_config(replace(kTwoLayer, "r_in = 0.6", "r_in = 0.7")); }),
            Errc::InvalidScenario);
}

TEST(PairConfig, ParsesShippedExample) {
  const auto p = load_pair_config(std::filesystem::path(EIT_GOLDEN_DIR) / ".." / ".." / "configs" / "pair_contrast.toml");
  EXPECT_EQ(p.a.regions[1].conductivity, 1.0);
  EXPECT_EQ(p.b.regions[1].conductivity, 2.0);
  EXPECT_EQ(p.mesh.h, 0.025);
  EXPECT_EQ(p.probe.j_values, (std::vector<int>{4, 8, 16, 32}));
}

TEST(PairConfig, RejectsMissingScenario) {
  EXPECT_EQ(error_of([] { parse_pair_config("[scenario_a]\n[mesh]\nh = 0.1\n"); }), Errc::Config);
}

TEST(ShippedConfigs, AllParse) {
  const auto dir = std::filesystem::path(EIT_GOLDEN_DIR) / ".." / ".." / "configs";
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".toml") continue;
    const std::string name = entry.path().filename().string();
    if (name.rfind("pair_", 0) == 0) {
      EXPECT_NO_THROW(load_pair_config(entry.path())) << name;
    } else {
      EXPECT_NO_THROW(load_scenario_config(entry.path())) << name;
    }
    ++count;
  }
  EXPECT_GE(count, 6);
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_EQ(error_of([] { read_file("/nonexistent/eit.toml"); }), Errc::Io);
}

TEST(Grid, RangeAndList) {
  const auto g = parse_grid("0.25:3.0:0.25");
  ASSERT_EQ(g.size(), 12u);
  EXPECT_EQ(g.front(), 0.25);
  EXPECT_EQ(g.back(), 3.0);
  EXPECT_EQ(g[1], 0.5);
  EXPECT_EQ(parse_grid("1, 2.5,4"), (std::vector<double>{1.0, 2.5, 4.0}));
  EXPECT_EQ(error_of([] { parse_grid("1:0:0.5"); }), Errc::InvalidArgument);
  EXPECT_EQ(error_of([] { parse_grid("a,b"); }), Errc::InvalidArgument);
  EXPECT_EQ(error_of([] { parse_grid(""); }), Errc::InvalidArgument);
}
