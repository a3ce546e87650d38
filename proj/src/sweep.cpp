#include "ntnvec/sweep.hpp"

#include "ntnvec/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace ntnvec::sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepRecord infeasible_record(SweepAxis axis, double value, Scheme scheme)
{
  SweepRecord r;
  r.axis = axis;
  r.value = value;
  r.scheme = scheme;
  r.eta_uav = r.eta_hap = r.objective = kNaN;
  r.t_lp = r.t_prop = r.t_ul = r.t_dl = r.t_wait = r.t_service = kNaN;
  r.feasible = false;
  return r;
}

std::vector<SweepRecord> evaluate_point(const SweepSpec& spec, double value)
{
  std::vector<SweepRecord> out;
  out.reserve(spec.schemes.size());
  std::optional<latency::SystemModel> model;
  try {
    model.emplace(apply_axis(spec.base, spec.axis, value));
  } catch (const Error&) {
    for (Scheme scheme : spec.schemes) {
      out.push_back(infeasible_record(spec.axis, value, scheme));
    }
    return out;
  }
  for (Scheme scheme : spec.schemes) {
    try {
      out.push_back(make_record(spec.axis, value, optimizer::solve(*model, scheme)));
    } catch (const Error&) {
      out.push_back(infeasible_record(spec.axis, value, scheme));
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char separator)
{
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, separator)) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == separator) {
    fields.emplace_back();
  }
  return fields;
}

double parse_number(const std::string& text, std::size_t line)
{
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ParseError("line " + std::to_string(line), "malformed number '" + text + "'");
  }
  return value;
}

std::ofstream open_output(const std::filesystem::path& destination)
{
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + destination.string() + " for writing");
  }
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& destination)
{
  out.flush();
  if (!out) {
    throw IoError("failed writing " + destination.string());
  }
}

} // namespace

int paired_servers(const PairedRange& range, double capacity)
{
  const double fraction = (capacity - range.capacity_lo) / (range.capacity_hi - range.capacity_lo);
  const double servers = range.servers_lo + fraction * (range.servers_hi - range.servers_lo);
  return std::max(1, static_cast<int>(std::lround(servers)));
}

SweepSpec spec_from(const Configuration& config)
{
  SweepSpec spec;
  spec.axis = config.sweep.axis;
  spec.values = config.sweep.values.empty() ? default_sweep_values(spec.axis) : config.sweep.values;
  spec.schemes = config.sweep.schemes;
  if (spec.schemes.empty()) {
    spec.schemes = {Scheme::LOCAL, Scheme::SO_UAV, Scheme::SO_HAP, Scheme::HO};
  }
  spec.base = config;
  return spec;
}

Configuration apply_axis(const Configuration& base, SweepAxis axis, double value)
{
  Configuration config = base;
  switch (axis) {
  case SweepAxis::k:
    config.scenario.density = value;
    break;
  case SweepAxis::n_ul:
    config.scenario.ul_bits = value;
    break;
  case SweepAxis::c_gv:
    config.platform(PlatformKind::GV).capacity = value;
    break;
  case SweepAxis::uav_capacity_and_servers: {
    PlatformProfile& uav = config.platform(PlatformKind::UAV);
    uav.capacity = value;
    uav.servers = paired_servers(kUavRange, value);
    break;
  }
  case SweepAxis::hap_capacity_and_servers: {
    PlatformProfile& hap = config.platform(PlatformKind::HAP);
    hap.capacity = value;
    hap.servers = paired_servers(kHapRange, value);
    break;
  }
  }
  validate(config);
  return config;
}

SweepRecord make_record(SweepAxis axis, double value, const optimizer::OffloadSolution& solution)
{
  SweepRecord r;
  r.axis = axis;
  r.value = value;
  r.scheme = solution.scheme;
  r.eta_uav = solution.eta_uav;
  r.eta_hap = solution.eta_hap;
  r.objective = solution.objective;
  r.t_lp = solution.t_lp;
  r.binding = solution.binding;
  r.feasible = true;

  // Breakdown columns: the platform a scheme offloads to; for the hybrid, the
  // active platform with the larger t_vec.
  const latency::LatencyBreakdown* shown = nullptr;
  auto pick = [&](PlatformKind kind) {
    auto it = solution.breakdowns.find(kind);
    return it == solution.breakdowns.end() ? nullptr : &it->second;
  };
  switch (solution.scheme) {
  case Scheme::LOCAL:
    break;
  case Scheme::SO_UAV:
    shown = pick(PlatformKind::UAV);
    break;
  case Scheme::SO_HAP:
    shown = pick(PlatformKind::HAP);
    break;
  case Scheme::HO: {
    const auto* uav = solution.eta_uav > 0.0 ? pick(PlatformKind::UAV) : nullptr;
    const auto* hap = solution.eta_hap > 0.0 ? pick(PlatformKind::HAP) : nullptr;
    if (uav && hap) {
      shown = uav->t_vec > hap->t_vec ? uav : hap;
    } else {
      shown = hap ? hap : uav;
    }
    break;
  }
  }
  if (shown) {
    r.t_prop = shown->t_prop;
    r.t_ul = shown->t_ul;
    r.t_dl = shown->t_dl;
    r.t_wait = shown->t_queue_wait;
    r.t_service = shown->t_service;
  }
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned threads)
{
  if (spec.values.empty()) {
    throw ValidationError("sweep.values", "must not be empty");
  }
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    if (!(spec.values[i] > spec.values[i - 1])) {
      throw ValidationError("sweep.values", "must be strictly increasing");
    }
  }
  if (spec.schemes.empty()) {
    throw ValidationError("sweep.schemes", "must not be empty");
  }

  const std::size_t points = spec.values.size();
  std::vector<std::vector<SweepRecord>> results(points);
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, points));

  if (threads <= 1) {
    for (std::size_t i = 0; i < points; ++i) {
      results[i] = evaluate_point(spec, spec.values[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < points; i = next++) {
          results[i] = evaluate_point(spec, spec.values[i]);
        }
      });
    }
  }

  std::vector<SweepRecord> records;
  records.reserve(points * spec.schemes.size());
  for (auto& point : results) {
    records.insert(records.end(), point.begin(), point.end());
  }
  return records;
}

std::string format_number(double value)
{
  if (std::isnan(value)) {
    return "nan";
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out)
{
  out << kCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    out << to_string(r.axis) << ',' << format_number(r.value) << ',' << to_string(r.scheme) << ','
        << format_number(r.eta_uav) << ',' << format_number(r.eta_hap) << ',' << format_number(r.objective) << ','
        << format_number(r.t_lp) << ',' << format_number(r.t_prop) << ',' << format_number(r.t_ul) << ','
        << format_number(r.t_dl) << ',' << format_number(r.t_wait) << ',' << format_number(r.t_service) << ','
        << (r.feasible ? to_string(r.binding) : std::string_view("-")) << ','
        << (r.feasible ? "true" : "false") << '\n';
  }
}

void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& destination)
{
  std::ofstream out = open_output(destination);
  emit_csv(records, out);
  finish_output(out, destination);
}

std::vector<SweepRecord> parse_csv(std::istream& in)
{
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ParseError("line 1", "missing or unexpected CSV header");
  }
  std::vector<SweepRecord> records;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) {
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 14) {
      throw ParseError("line " + std::to_string(number), "expected 14 fields");
    }
    SweepRecord r;
    const auto axis = parse_sweep_axis(f[0]);
    const auto scheme = parse_scheme(f[2]);
    if (!axis || !scheme) {
      throw ParseError("line " + std::to_string(number), "unknown axis or scheme");
    }
    r.axis = *axis;
    r.value = parse_number(f[1], number);
    r.scheme = *scheme;
    r.eta_uav = parse_number(f[3], number);
    r.eta_hap = parse_number(f[4], number);
    r.objective = parse_number(f[5], number);
    r.t_lp = parse_number(f[6], number);
    r.t_prop = parse_number(f[7], number);
    r.t_ul = parse_number(f[8], number);
    r.t_dl = parse_number(f[9], number);
    r.t_wait = parse_number(f[10], number);
    r.t_service = parse_number(f[11], number);
    if (f[12] != "-") {
      const auto binding = optimizer::parse_binding(f[12]);
      if (!binding) {
        throw ParseError("line " + std::to_string(number), "unknown binding '" + f[12] + "'");
      }
      r.binding = *binding;
    }
    if (f[13] != "true" && f[13] != "false") {
      throw ParseError("line " + std::to_string(number), "feasible must be true or false");
    }
    r.feasible = f[13] == "true";
    records.push_back(r);
  }
  return records;
}

void emit_plotdata(const std::vector<SweepRecord>& records, std::ostream& out)
{
  out << "# x = " << (records.empty() ? std::string_view("value") : to_string(records.front().axis))
      << ", y = objective [ms]\n";
  if (records.empty()) {
    return;
  }
  std::vector<Scheme> order;
  for (const SweepRecord& r : records) {
    if (std::find(order.begin(), order.end(), r.scheme) == order.end()) {
      order.push_back(r.scheme);
    }
  }
  for (Scheme scheme : order) {
    out << "# scheme " << to_string(scheme) << '\n';
    for (const SweepRecord& r : records) {
      if (r.scheme == scheme && r.feasible) {
        out << format_number(r.value) << ' ' << format_number(r.objective * 1e3) << '\n';
      }
    }
    out << '\n';
  }
  const auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                            [](const auto& a, const auto& b) { return a.value < b.value; });
  out << "# reference_100ms\n"
      << format_number(lo->value) << ' ' << format_number(kRealTimeTargetMs) << '\n'
      << format_number(hi->value) << ' ' << format_number(kRealTimeTargetMs) << '\n';
}

void emit_plotdata(const std::vector<SweepRecord>& records, const std::filesystem::path& destination)
{
  std::ofstream out = open_output(destination);
  emit_plotdata(records, out);
  finish_output(out, destination);
}

std::vector<PlotSeries> parse_plotdata(std::istream& in)
{
  std::vector<PlotSeries> series;
  bool open = false;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) {
      open = false;
      continue;
    }
    if (line.rfind("# scheme ", 0) == 0) {
      series.push_back({line.substr(9), {}});
      open = true;
      continue;
    }
    if (line == "# reference_100ms") {
      series.push_back({"reference_100ms", {}});
      open = true;
      continue;
    }
    if (line.front() == '#') {
      continue;
    }
    if (!open) {
      throw ParseError("line " + std::to_string(number), "data outside a block");
    }
    const auto f = split(line, ' ');
    if (f.size() != 2) {
      throw ParseError("line " + std::to_string(number), "expected two columns");
    }
    series.back().points.emplace_back(parse_number(f[0], number), parse_number(f[1], number));
  }
  return series;
}

} // namespace ntnvec::sweep
