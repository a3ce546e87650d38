#pragma once

#include "ntnvec/optimizer.hpp"
#include "ntnvec/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ntnvec::sweep {

struct SweepSpec
{
  SweepAxis axis = SweepAxis::k;
  std::vector<double> values;
  std::vector<Scheme> schemes;
  Configuration base;
};

struct SweepRecord
{
  SweepAxis axis = SweepAxis::k;
  double value = 0.0;
  Scheme scheme = Scheme::LOCAL;
  double eta_uav = 0.0;
  double eta_hap = 0.0;
  double objective = 0.0; // s
  double t_lp = 0.0;
  double t_prop = 0.0;
  double t_ul = 0.0;
  double t_dl = 0.0;
  double t_wait = 0.0;
  double t_service = 0.0;
  optimizer::Binding binding = optimizer::Binding::local_only;
  bool feasible = true;
};

// Paired capacity/server axes: servers follow capacity linearly across these
// ranges and are rounded to the nearest integer.
struct PairedRange
{
  double capacity_lo;
  double capacity_hi;
  int servers_lo;
  int servers_hi;
};

inline constexpr PairedRange kUavRange{1000e9, 4000e9, 2, 8};
inline constexpr PairedRange kHapRange{3000e9, 10000e9, 6, 25};

int paired_servers(const PairedRange& range, double capacity);

/// Sweep spec from the config's sweep section; empty values/schemes fall back
/// to the axis defaults and all four schemes.
SweepSpec spec_from(const Configuration& config);

/// `base` with the axis parameter set to `value`, re-validated.
Configuration apply_axis(const Configuration& base, SweepAxis axis, double value);

/// One record per (value, scheme), ordered by value then scheme as listed.
/// Per-point failures yield feasible = false. `threads` = 0 picks the
/// hardware concurrency; output does not depend on it.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned threads = 1);

/// Single-point record for a solved scheme.
SweepRecord make_record(SweepAxis axis, double value, const optimizer::OffloadSolution& solution);

inline constexpr const char* kCsvHeader =
    "axis,value,scheme,eta_uav,eta_hap,objective_s,t_lp_s,t_prop_s,t_ul_s,t_dl_s,t_wait_s,t_service_s,"
    "binding,feasible";

/// Numbers are printed with 9 significant digits.
std::string format_number(double value);

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out);
void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& destination);
std::vector<SweepRecord> parse_csv(std::istream& in);

struct PlotSeries
{
  std::string label; // scheme name or "reference_100ms"
  std::vector<std::pair<double, double>> points;
};

inline constexpr double kRealTimeTargetMs = 100.0;

/// Whitespace-separated x/y blocks (objective in ms), one per scheme in
/// first-appearance order, then a flat 100 ms reference block.
void emit_plotdata(const std::vector<SweepRecord>& records, std::ostream& out);
void emit_plotdata(const std::vector<SweepRecord>& records, const std::filesystem::path& destination);
std::vector<PlotSeries> parse_plotdata(std::istream& in);

} // namespace ntnvec::sweep
