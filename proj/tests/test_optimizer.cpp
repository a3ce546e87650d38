#include "ntnvec/errors.hpp"
#include "ntnvec/optimizer.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace ntnvec;
using namespace ntnvec::optimizer;

namespace {

Configuration scenario_config(double density, double gv_capacity, double ul_bits = 1e6)
{
  Configuration config = default_configuration();
  config.scenario.density = density;
  config.scenario.ul_bits = ul_bits;
  config.platforms.at(PlatformKind::GV).capacity = gv_capacity;
  validate(config);
  return config;
}

double max_offered(const OffloadSolution& s, const latency::SystemModel& model, PlatformKind kind)
{
  const auto& p = model.path(kind).platform;
  return model.scenario().arrival_rate() * s.eta(kind) * model.scenario().load / p.capacity;
}

} // namespace

TEST(Optimizer, StabilityBoundArithmetic)
{
  EXPECT_EQ(eta_max(4, 1500e9, 1e11, 25, 1, 10), 0.24);
  EXPECT_EQ(eta_max(4, 1500e9, 1e11, 200, 1, 10), 0.03);
  EXPECT_DOUBLE_EQ(eta_max(12, 3500e9, 1e11, 25, 1, 10), 1.68);
  const latency::SystemModel model(scenario_config(25, 200e9));
  EXPECT_EQ(eta_max(model, PlatformKind::UAV), 0.24);
  EXPECT_DOUBLE_EQ(search_limit(model, PlatformKind::UAV), 0.24 * (1 - kStabilityGuard));
  EXPECT_EQ(search_limit(model, PlatformKind::HAP), 1.0);
}

TEST(Optimizer, BindingNamesRoundTrip)
{
  for (Binding b : {Binding::crossing, Binding::local_only, Binding::stability_bound, Binding::unit_bound}) {
    EXPECT_EQ(parse_binding(to_string(b)), b);
  }
  EXPECT_FALSE(parse_binding("nope").has_value());
}

TEST(Optimizer, SparseHapOffloadsMostOfTheLoad)
{
  const latency::SystemModel model(scenario_config(25, 200e9));
  const auto s = solve_standalone(model, PlatformKind::HAP);
  EXPECT_NEAR(s.eta_hap, 0.93, 0.05);
  EXPECT_NEAR(s.objective, 0.035, 0.005);
  EXPECT_EQ(s.binding, Binding::crossing);
  EXPECT_EQ(s.eta_uav, 0.0);
}

TEST(Optimizer, SparseUavIsLimitedByStability)
{
  const latency::SystemModel model(scenario_config(25, 200e9));
  const auto s = solve_standalone(model, PlatformKind::UAV);
  EXPECT_NEAR(s.eta_uav, 0.24, 0.05);
  EXPECT_LT(s.eta_uav, 0.24);
  EXPECT_GE(s.objective, 0.35);
  EXPECT_LE(s.objective, 0.45);
}

TEST(Optimizer, ObjectiveMatchesReevaluation)
{
  const latency::SystemModel model(scenario_config(100, 500e9));
  for (PlatformKind kind : {PlatformKind::UAV, PlatformKind::HAP}) {
    const auto s = solve_standalone(model, kind);
    const double again = latency::objective_standalone(s.eta(kind), model, kind);
    EXPECT_LE(std::abs(s.objective - again), 1e-9 * again);
  }
  const auto h = solve_hybrid(model);
  const double again = latency::objective_hybrid(h.eta_uav, h.eta_hap, model);
  EXPECT_LE(std::abs(h.objective - again), 1e-9 * again);
}

TEST(Optimizer, CrossingSatisfiesStoppingRule)
{
  for (double k : {25.0, 100.0, 200.0}) {
    for (double c_gv : {200e9, 500e9, 1000e9}) {
      const latency::SystemModel model(scenario_config(k, c_gv));
      for (PlatformKind kind : {PlatformKind::UAV, PlatformKind::HAP}) {
        const auto s = solve_standalone(model, kind);
        if (s.binding != Binding::crossing) {
          continue;
        }
        const auto& b = s.breakdowns.at(kind);
        EXPECT_LT(std::abs(b.t_lp - b.t_vec), model.tolerance() * b.t_vec) << "k=" << k << " " << to_string(kind);
      }
    }
  }
}

TEST(Optimizer, NeverProbesAnUnstableQueue)
{
  for (double k : {25.0, 200.0, 500.0}) {
    const latency::SystemModel model(scenario_config(k, 200e9));
    int probes = 0;
    const ProbeObserver observer = [&](const Probe& p) {
      ++probes;
      EXPECT_LT(p.offered, p.servers) << to_string(p.platform) << " eta=" << p.eta;
      EXPECT_GE(p.eta, 0.0);
      EXPECT_LE(p.eta, 1.0);
    };
    for (Scheme scheme : {Scheme::SO_UAV, Scheme::SO_HAP, Scheme::HO}) {
      const auto s = solve(model, scheme, observer);
      EXPECT_LT(max_offered(s, model, PlatformKind::UAV), model.path(PlatformKind::UAV).platform.servers);
      EXPECT_LT(max_offered(s, model, PlatformKind::HAP), model.path(PlatformKind::HAP).platform.servers);
    }
    EXPECT_GT(probes, 0);
  }
}

TEST(Optimizer, HugePayloadKeepsEverythingLocal)
{
  Configuration config = scenario_config(200, 500e9, 1e9);
  const latency::SystemModel model(config);
  const auto s = solve_standalone(model, PlatformKind::HAP);
  EXPECT_EQ(s.binding, Binding::local_only);
  EXPECT_EQ(s.eta_hap, 0.0);
  EXPECT_DOUBLE_EQ(s.objective, latency::objective_standalone(0.0, model, PlatformKind::HAP));
}

TEST(Optimizer, LocalScheme)
{
  const latency::SystemModel model(scenario_config(25, 200e9));
  const auto s = solve(model, Scheme::LOCAL);
  EXPECT_EQ(s.eta_total(), 0.0);
  EXPECT_DOUBLE_EQ(s.objective, 0.5);
  EXPECT_EQ(s.binding, Binding::local_only);
}

TEST(Optimizer, AgreesWithDenseGridSearch)
{
  for (double k : {25.0, 100.0, 200.0}) {
    for (double c_gv : {200e9, 500e9, 1000e9}) {
      for (double n_ul : {0.5e6, 1e6, 2.5e6}) {
        const latency::SystemModel model(scenario_config(k, c_gv, n_ul));
        for (PlatformKind kind : {PlatformKind::UAV, PlatformKind::HAP}) {
          const auto s = solve_standalone(model, kind);
          const auto grid = oracle::grid_search_standalone(model, kind, 1e-4);
          const double allowance = std::max(model.tolerance() * grid.objective, 2e-4 * grid.slope);
          EXPECT_LE(s.objective, grid.objective + allowance)
              << "k=" << k << " C_GV=" << c_gv << " n_ul=" << n_ul << " " << to_string(kind);
          EXPECT_GE(s.objective, grid.objective - allowance);
        }
      }
    }
  }
}

TEST(Optimizer, MoreCapacityNeverHurts)
{
  for (PlatformKind kind : {PlatformKind::UAV, PlatformKind::HAP}) {
    double previous = INFINITY;
    for (double c_gv : {100e9, 200e9, 400e9, 800e9, 1600e9}) {
      const auto s = solve_standalone(latency::SystemModel(scenario_config(100, c_gv)), kind);
      EXPECT_LE(s.objective, previous * (1 + 1e-3));
      previous = s.objective;
    }
    previous = INFINITY;
    for (double scale : {0.5, 1.0, 2.0, 4.0}) {
      Configuration config = scenario_config(100, 500e9);
      config.platforms.at(kind).capacity *= scale;
      validate(config);
      const auto s = solve_standalone(latency::SystemModel(config), kind);
      EXPECT_LE(s.objective, previous * (1 + 1e-3));
      previous = s.objective;
    }
  }
}

TEST(Optimizer, HybridDominatesStandaloneSchemes)
{
  for (double k : {25.0, 100.0, 200.0}) {
    for (double c_gv : {200e9, 500e9, 1000e9}) {
      for (double n_ul : {0.5e6, 1e6, 2.5e6}) {
        const latency::SystemModel model(scenario_config(k, c_gv, n_ul));
        const auto h = solve_hybrid(model);
        const auto u = solve_standalone(model, PlatformKind::UAV);
        const auto p = solve_standalone(model, PlatformKind::HAP);
        const double best = std::min(u.objective, p.objective);
        EXPECT_LE(h.objective, best + model.tolerance() * best) << "k=" << k << " C_GV=" << c_gv;
        EXPECT_LE(h.eta_total(), 1.0);
        EXPECT_GE(h.eta_uav, 0.0);
        EXPECT_GE(h.eta_hap, 0.0);
      }
    }
  }
}

TEST(Optimizer, HybridSkipsHapWhenItsOverheadIsTooLarge)
{
  // A HAP downlink this slow makes its fixed overhead exceed the UAV optimum.
  Configuration config = scenario_config(25, 200e9);
  config.links.at(PlatformKind::HAP).dl.pl_override = 215.0;
  validate(config);
  const latency::SystemModel model(config);
  const auto u = solve_standalone(model, PlatformKind::UAV);
  ASSERT_GT(latency::evaluate_standalone(0.0, model, PlatformKind::HAP).t_vec, u.objective);
  const auto h = solve_hybrid(model);
  EXPECT_EQ(h.eta_uav, u.eta_uav);
  EXPECT_EQ(h.eta_hap, 0.0);
  EXPECT_EQ(h.objective, u.objective);
}

TEST(Optimizer, HybridCollapsesToHapWithoutUsefulUav)
{
  Configuration config = scenario_config(25, 200e9);
  config.platforms.at(PlatformKind::UAV).capacity = 1e6;
  config.platforms.at(PlatformKind::UAV).servers = 1;
  validate(config);
  const latency::SystemModel model(config);
  const auto h = solve_hybrid(model);
  const auto p = solve_standalone(model, PlatformKind::HAP);
  EXPECT_LT(h.eta_uav, 1e-6);
  EXPECT_NEAR(h.eta_hap, p.eta_hap, 0.01);
  EXPECT_LE(h.objective, p.objective * (1 + model.tolerance()));
}

TEST(Optimizer, HybridIsNearTheTwoDimensionalGridOptimum)
{
  for (double k : {25.0, 100.0}) {
    const latency::SystemModel model(scenario_config(k, 200e9));
    const auto h = solve_hybrid(model);
    const auto grid = oracle::grid_search_hybrid(model, 2e-3);
    // The grid cannot resolve the optimum better than a few percent.
    EXPECT_LE(h.objective, grid.objective * 1.001) << "k=" << k;
    EXPECT_GE(h.objective, grid.objective * 0.9) << "k=" << k;
  }
}

TEST(Optimizer, SolutionsAreDeterministic)
{
  const latency::SystemModel model(scenario_config(100, 500e9));
  for (Scheme scheme : {Scheme::SO_UAV, Scheme::SO_HAP, Scheme::HO}) {
    const auto a = solve(model, scheme);
    const auto b = solve(model, scheme);
    EXPECT_EQ(a.eta_uav, b.eta_uav);
    EXPECT_EQ(a.eta_hap, b.eta_hap);
    EXPECT_EQ(a.objective, b.objective);
  }
}
