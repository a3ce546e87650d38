#include "ntnvec/channel.hpp"
#include "ntnvec/errors.hpp"
#include "ntnvec/latency.hpp"
#include "ntnvec/scenario.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

using namespace ntnvec;

namespace {

const std::filesystem::path kConfigDir = std::filesystem::path(NTNVEC_SOURCE_DIR) / "configs";

template <typename E>
std::string field_of(const std::string& text)
{
  try {
    parse_configuration(text);
  } catch (const E& e) {
    return e.field();
  }
  return "<no error>";
}

} // namespace

TEST(Scenario, ShippedDefaultFileMatchesTable)
{
  const Configuration config = load_scenario(kConfigDir / "default.json");
  const Scenario& s = config.scenario;
  EXPECT_EQ(s.density, 200.0);
  EXPECT_EQ(s.area, 1.0);
  EXPECT_EQ(s.frame_rate, 10.0);
  EXPECT_EQ(s.ul_bits, 1e6);
  EXPECT_EQ(s.dl_bits, 1e5);
  EXPECT_EQ(s.load, 1e11);
  EXPECT_EQ(s.tolerance, 1e-3);
  EXPECT_TRUE(config.warnings.empty());
}

TEST(Scenario, ShippedDefaultFileEqualsBuiltInDefaultsExceptHapExcessLoss)
{
  Configuration from_file = load_scenario(kConfigDir / "default.json");
  Configuration built_in = default_configuration();
  validate(built_in);
  EXPECT_EQ(from_file.scenario, built_in.scenario);
  EXPECT_EQ(from_file.platforms, built_in.platforms);
  EXPECT_EQ(from_file.sweep, built_in.sweep);
  // The file spells out every link; only the HAP excess loss default differs
  // because the file does not mention pl_g.
  EXPECT_EQ(from_file.links.at(PlatformKind::UAV), built_in.links.at(PlatformKind::UAV));
  EXPECT_DOUBLE_EQ(from_file.links.at(PlatformKind::HAP).ul.pl_g, default_hap_excess_loss());
}

TEST(Scenario, OmittedPlatformsTakeTableDefaults)
{
  const Configuration config = parse_configuration(R"({"scenario": {"k": 50}})");
  const auto& gv = config.platform(PlatformKind::GV);
  const auto& uav = config.platform(PlatformKind::UAV);
  const auto& hap = config.platform(PlatformKind::HAP);
  EXPECT_EQ(gv.capacity, 500e9);
  EXPECT_EQ(gv.servers, 1);
  EXPECT_EQ(gv.altitude, 0.0);
  EXPECT_EQ(uav.capacity, 1500e9);
  EXPECT_EQ(uav.servers, 4);
  EXPECT_EQ(uav.altitude, 0.1);
  EXPECT_EQ(hap.capacity, 3500e9);
  EXPECT_EQ(hap.servers, 12);
  EXPECT_EQ(hap.altitude, 20.0);
  EXPECT_EQ(config.scenario.density, 50.0);
}

TEST(Scenario, DownlinkLargerThanUplinkIsRejected)
{
  EXPECT_EQ(field_of<ValidationError>(R"({"scenario": {"n_ul": 1e5, "n_dl": 2e5}})"), "scenario.n_dl");
}

TEST(Scenario, InvariantViolationsNameTheField)
{
  EXPECT_EQ(field_of<ValidationError>(R"({"scenario": {"k": 0}})"), "scenario.k");
  EXPECT_EQ(field_of<ValidationError>(R"({"scenario": {"A": -1}})"), "scenario.A");
  EXPECT_EQ(field_of<ValidationError>(R"({"scenario": {"C": 0}})"), "scenario.C");
  EXPECT_EQ(field_of<ValidationError>(R"({"solver": {"xi": 1.5}})"), "solver.xi");
  EXPECT_EQ(field_of<ValidationError>(R"({"platforms": {"UAV": {"servers": 0}}})"), "platforms.UAV.servers");
  EXPECT_EQ(field_of<ValidationError>(R"({"platforms": {"UAV": {"servers": 2.5}}})"), "platforms.UAV.servers");
  EXPECT_EQ(field_of<ValidationError>(R"({"platforms": {"HAP": {"altitude": -1}}})"), "platforms.HAP.altitude");
  EXPECT_EQ(field_of<ValidationError>(R"({"scenario": {"bogus": 1}})"), "scenario.bogus");
  EXPECT_EQ(field_of<ValidationError>(R"({"links": {"HAP": {"UL": {"fc": 0}}}})"), "links.HAP.UL.fc");
  EXPECT_EQ(field_of<ValidationError>(R"({"sweep": {"values": []}})"), "sweep.values");
  EXPECT_EQ(field_of<ValidationError>(R"({"sweep": {"values": [2, 1]}})"), "sweep.values");
  EXPECT_EQ(field_of<ValidationError>(R"({"schema_version": 7})"), "schema_version");
}

TEST(Scenario, IntegralFloatServerCountIsAccepted)
{
  const Configuration config = parse_configuration(R"({"platforms": {"UAV": {"servers": 6.0}}})");
  EXPECT_EQ(config.platform(PlatformKind::UAV).servers, 6);
}

TEST(Scenario, MalformedFileIsAParseError)
{
  EXPECT_THROW(parse_configuration("{\"scenario\": {"), ParseError);
  EXPECT_THROW(parse_configuration("[1, 2]"), ValidationError);
}

TEST(Scenario, MissingFileIsAnIoError)
{
  EXPECT_THROW(load_scenario(kConfigDir / "does_not_exist.json"), IoError);
}

TEST(Scenario, DoublySpecifiedEndpointIsAmbiguous)
{
  EXPECT_EQ(field_of<AmbiguityError>(
                R"({"links": {"UAV": {"UL": {"tx": {"eirp": 29, "p_t": 10, "l_c": 0, "g_t": 19}}}}})"),
            "links.UAV.UL.tx.eirp");
  EXPECT_EQ(field_of<AmbiguityError>(
                R"({"links": {"HAP": {"DL": {"rx": {"g_over_t": 12, "g_r": 30, "n_f": 1, "t0": 290, "t_a": 150}}}}})"),
            "links.HAP.DL.rx.g_over_t");
}

TEST(Scenario, IncompleteConstituentsAreRejected)
{
  EXPECT_EQ(field_of<ValidationError>(R"({"links": {"UAV": {"UL": {"tx": {"p_t": 10, "g_t": 19}}}}})"),
            "links.UAV.UL.tx.eirp");
  EXPECT_EQ(field_of<ValidationError>(R"({"links": {"UAV": {"UL": {"rx": {"g_r": 10}}}}})"),
            "links.UAV.UL.rx.g_over_t");
  EXPECT_EQ(field_of<ValidationError>(
                R"({"links": {"UAV": {"UL": {"rx": {"g_r": 10, "n_f": 1, "t0": -5, "t_a": 150}}}}})"),
            "links.UAV.UL.rx.t0");
}

TEST(Scenario, ConstituentEndpointsResolveThroughTheFormulas)
{
  const Configuration config = parse_configuration(R"({"links": {"HAP": {"UL": {
      "tx": {"p_t": 10, "l_c": 2, "g_t": 21.9},
      "rx": {"g_r": 35, "n_f": 1.2, "t0": 290, "t_a": 150}}}}})");
  const LinkBudget& ul = config.links.at(PlatformKind::HAP).ul;
  EXPECT_NEAR(channel::resolve_eirp(ul.tx), 29.9, 1e-12);
  // mpmath: 35 - 1.2 - 10 log10(290 + (150 - 290) 10^-0.12)
  EXPECT_NEAR(channel::resolve_g_over_t(ul.rx), 11.156565262091616, 1e-12);
}

TEST(Scenario, OverrideModeRequiresOverrideValue)
{
  Configuration config = default_configuration();
  config.links.at(PlatformKind::UAV).ul.pl_override.reset();
  EXPECT_THROW(validate(config), ValidationError);

  config = default_configuration();
  config.links.at(PlatformKind::UAV).ul.path_loss_mode = PathLossMode::computed;
  EXPECT_THROW(validate(config), ValidationError); // override value present in computed mode

  // Switching to computed in the file drops the default override value.
  const Configuration computed =
      parse_configuration(R"({"links": {"UAV": {"UL": {"path_loss_mode": "computed"}}}})");
  EXPECT_FALSE(computed.links.at(PlatformKind::UAV).ul.pl_override.has_value());
}

TEST(Scenario, ComputedHapPathLossWithDefaultsReproducesTable)
{
  const Configuration config = parse_configuration(R"({"links": {"HAP": {"UL": {"path_loss_mode": "computed"}}}})");
  const LinkBudget& ul = config.links.at(PlatformKind::HAP).ul;
  const double d = latency::avg_distance(1.0, 20.0);
  EXPECT_NEAR(channel::total_path_loss(ul, d), 172.76, 1e-9);
  EXPECT_EQ(ul.pl_s, 0.0);
  EXPECT_NEAR(default_hap_excess_loss(), 22.692000495229442, 1e-9);
}

TEST(Scenario, CapacityOrderingIsAWarningNotAnError)
{
  const Configuration config = parse_configuration(R"({"platforms": {"UAV": {"capacity": 4000e9}}})");
  ASSERT_EQ(config.warnings.size(), 1u);
  EXPECT_NE(config.warnings.front().find("C_HAP >= C_UAV >= C_GV"), std::string::npos);
}

TEST(Scenario, UnitConventions)
{
  EXPECT_EQ(1.2 * units::megabit, 1.2e6);
  EXPECT_EQ(100 * units::gflop, 1e11);
  EXPECT_EQ(400 * units::megahertz, 4e8);
  EXPECT_EQ(constants::speed_of_light, 299792.458);
  EXPECT_EQ(constants::boltzmann_db, -228.6);
}

TEST(Scenario, LoadingIsDeterministic)
{
  const std::string text = serialize(load_scenario(kConfigDir / "sparse_cgv200.json"));
  EXPECT_EQ(parse_configuration(text), parse_configuration(text));
  EXPECT_EQ(serialize(parse_configuration(text)), text);
}

// Randomised configurations survive serialize -> parse unchanged.
TEST(Scenario, SerializeRoundTripProperty)
{
  std::mt19937_64 rng(20240611);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  for (int trial = 0; trial < 200; ++trial) {
    Configuration config = default_configuration();
    Scenario& s = config.scenario;
    s.density = uniform(1, 600);
    s.area = uniform(0.1, 5);
    s.frame_rate = uniform(1, 60);
    s.ul_bits = uniform(1e5, 5e6);
    s.dl_bits = uniform(0, s.ul_bits);
    s.load = uniform(1e9, 1e12);
    s.tolerance = uniform(1e-6, 0.1);
    for (auto& [kind, p] : config.platforms) {
      p.capacity = uniform(1e10, 1e13);
      p.servers = std::uniform_int_distribution<int>(1, 30)(rng);
      p.altitude = kind == PlatformKind::GV ? 0.0 : uniform(0.05, 25);
    }
    LinkBudget& hap_dl = config.links.at(PlatformKind::HAP).dl;
    if (trial % 2 == 0) {
      hap_dl.tx = RadioEndpoint{};
      hap_dl.tx.p_t = uniform(0, 20);
      hap_dl.tx.l_c = uniform(0, 3);
      hap_dl.tx.g_t = uniform(0, 40);
      hap_dl.rx = RadioEndpoint{};
      hap_dl.rx.g_r = uniform(0, 40);
      hap_dl.rx.n_f = uniform(0, 5);
      hap_dl.rx.t0 = 290;
      hap_dl.rx.t_a = uniform(50, 400);
    }
    if (trial % 3 == 0) {
      LinkBudget& uav_ul = config.links.at(PlatformKind::UAV).ul;
      uav_ul.path_loss_mode = PathLossMode::computed;
      uav_ul.pl_override.reset();
      uav_ul.pl_g = uniform(0, 5);
      uav_ul.pl_s = uniform(0, 2);
    }
    config.sweep.axis = SweepAxis::n_ul;
    config.sweep.values = {uniform(1e5, 1e6), uniform(2e6, 3e6)};
    config.sweep.schemes = {Scheme::HO, Scheme::SO_UAV};
    validate(config);

    const Configuration again = parse_configuration(serialize(config));
    ASSERT_EQ(again, config) << serialize(config);
  }
}
