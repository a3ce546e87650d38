#include "cli.hpp"

#include "ntnvec/errors.hpp"
#include "ntnvec/optimizer.hpp"
#include "ntnvec/sweep.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

namespace ntnvec::cli {

namespace {

constexpr std::array<Scheme, 4> kAllSchemes{Scheme::LOCAL, Scheme::SO_UAV, Scheme::SO_HAP, Scheme::HO};
constexpr std::array<PlatformKind, 2> kOffloadTargets{PlatformKind::UAV, PlatformKind::HAP};

struct Options
{
  std::string config_path;
  std::string output_path;
  std::string scheme;
  std::string axis;
  int verbosity = 0;
};

// Display formatting: 4 significant digits.
std::string show(double value)
{
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4g", value);
  return buffer;
}

void line(std::ostream& out, std::string_view label, const std::string& value, std::string_view unit = {})
{
  out << "  " << label;
  for (std::size_t i = label.size(); i < 14; ++i) {
    out << ' ';
  }
  out << value;
  if (!unit.empty()) {
    out << ' ' << unit;
  }
  out << '\n';
}

Configuration load(const Options& options, bool required)
{
  std::string path = options.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) {
      path = env;
    }
  }
  if (path.empty()) {
    if (required) {
      throw ValidationError("--config", "no config file given (use --config PATH or set NTNVEC_CONFIG)");
    }
    return default_configuration();
  }
  if (path == "default") {
    auto config = default_configuration();
    validate(config);
    return config;
  }
  return load_scenario(path);
}

void print_warnings(const Configuration& config, std::ostream& err)
{
  for (const auto& warning : config.warnings) {
    err << "warning: " << warning << '\n';
  }
}

void print_breakdown(std::ostream& out, PlatformKind kind, const latency::LatencyBreakdown& b)
{
  out << "  breakdown " << to_string(kind) << ":\n";
  line(out, "  t_prop", show(b.t_prop), "s");
  line(out, "  t_ul", show(b.t_ul), "s");
  line(out, "  t_dl", show(b.t_dl), "s");
  line(out, "  t_wait", show(b.t_queue_wait), "s");
  line(out, "  t_service", show(b.t_service), "s");
  line(out, "  t_vec", show(b.t_vec), "s");
}

void print_solution(std::ostream& out, const optimizer::OffloadSolution& s)
{
  out << "scheme " << to_string(s.scheme) << '\n';
  line(out, "eta_uav", show(s.eta_uav));
  line(out, "eta_hap", show(s.eta_hap));
  line(out, "objective", show(s.objective), "s");
  line(out, "binding", std::string(to_string(s.binding)));
  line(out, "iterations", std::to_string(s.iterations));
  line(out, "t_lp", show(s.t_lp), "s");
  for (const auto& [kind, breakdown] : s.breakdowns) {
    if (s.scheme != Scheme::HO || s.eta(kind) > 0.0) {
      print_breakdown(out, kind, breakdown);
    }
  }
}

std::vector<Scheme> selected_schemes(const Options& options)
{
  if (options.scheme.empty()) {
    return {kAllSchemes.begin(), kAllSchemes.end()};
  }
  const auto scheme = parse_scheme(options.scheme);
  if (!scheme) {
    throw ValidationError("--scheme", "expected one of local, so-uav, so-hap, ho");
  }
  return {*scheme};
}

int cmd_solve(const Options& options, std::ostream& out, std::ostream& err)
{
  const Configuration config = load(options, true);
  print_warnings(config, err);
  const latency::SystemModel model(config);

  optimizer::ProbeObserver observer;
  if (options.verbosity >= 2) {
    observer = [&out](const optimizer::Probe& p) {
      out << "  iterate " << to_string(p.platform) << " eta=" << sweep::format_number(p.eta)
          << " t_lp=" << sweep::format_number(p.t_lp) << " t_vec=" << sweep::format_number(p.t_vec) << '\n';
    };
  }

  std::vector<sweep::SweepRecord> records;
  for (Scheme scheme : selected_schemes(options)) {
    const auto solution = optimizer::solve(model, scheme, observer);
    print_solution(out, solution);
    records.push_back(sweep::make_record(SweepAxis::k, config.scenario.density, solution));
  }
  if (!options.output_path.empty()) {
    sweep::emit_csv(records, std::filesystem::path(options.output_path));
  }
  return kOk;
}

int cmd_sweep(const Options& options, std::ostream& out, std::ostream& err)
{
  const Configuration config = load(options, true);
  print_warnings(config, err);
  sweep::SweepSpec spec = sweep::spec_from(config);
  if (!options.axis.empty()) {
    const auto axis = parse_sweep_axis(options.axis);
    if (!axis) {
      throw ValidationError("--axis", "expected one of k, n_ul, c_gv, uav, hap");
    }
    if (*axis != spec.axis) {
      spec.axis = *axis;
      spec.values = default_sweep_values(*axis);
    }
  }
  if (!options.scheme.empty()) {
    spec.schemes = selected_schemes(options);
  }

  const auto records = sweep::run_sweep(spec, 0);
  if (options.output_path.empty()) {
    sweep::emit_csv(records, out);
  } else {
    const std::filesystem::path csv(options.output_path);
    std::filesystem::path plot = csv;
    plot.replace_extension(".dat");
    sweep::emit_csv(records, csv);
    sweep::emit_plotdata(records, plot);
    if (options.verbosity >= 1) {
      err << "wrote " << records.size() << " records to " << csv.string() << " and " << plot.string() << '\n';
    }
  }
  return kOk;
}

int cmd_validate(const Options& options, std::ostream& out, std::ostream& err)
{
  const Configuration config = load(options, false);
  print_warnings(config, err);
  const latency::SystemModel model(config);
  const Scenario& s = config.scenario;

  out << "configuration OK\n";
  line(out, "k", show(s.density), "GV/km^2");
  line(out, "lambda", show(s.arrival_rate()), "tasks/s");
  line(out, "t_local", show(model.local_only_time()), "s");
  for (PlatformKind kind : kOffloadTargets) {
    const auto& path = model.path(kind);
    out << to_string(kind) << ":\n";
    line(out, "  distance", show(path.distance), "km");
    line(out, "  eta_max", show(optimizer::eta_max(model, kind)));
    line(out, "  overhead", show(latency::evaluate_standalone(0.0, model, kind).t_vec), "s");
  }

  if (config.sweep.axis == SweepAxis::k) {
    out << "eta_max over sweep k values:\n";
    for (double k : config.sweep.values) {
      out << "  k=" << show(k);
      for (PlatformKind kind : kOffloadTargets) {
        const auto& p = config.platform(kind);
        out << "  " << to_string(kind) << "="
            << show(optimizer::eta_max(p.servers, p.capacity, s.load, k, s.area, s.frame_rate));
      }
      out << '\n';
    }
  }
  return kOk;
}

int cmd_budget(const Options& options, std::ostream& out, std::ostream& err)
{
  const Configuration config = load(options, false);
  print_warnings(config, err);
  const latency::SystemModel model(config);
  for (PlatformKind kind : kOffloadTargets) {
    const auto& path = model.path(kind);
    const PlatformLinks& budgets = config.links.at(kind);
    for (const auto* cap : {&path.ul, &path.dl}) {
      const LinkBudget& link = budgets[cap->direction];
      out << to_string(kind) << ' ' << to_string(cap->direction) << ":\n";
      line(out, "distance", show(path.distance), "km");
      line(out, "EIRP", show(cap->eirp), "dBW");
      line(out, "G/T", show(cap->g_over_t), "dB/K");
      line(out, "PL", show(cap->pl_used) + " (" + std::string(to_string(link.path_loss_mode)) + ")", "dB");
      line(out, "SNR", show(cap->snr_db), "dB");
      line(out, "capacity", show(cap->rate), "bit/s");
    }
  }
  return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Offloading-factor optimizer for UAV/HAP-assisted vehicular edge computing"};
  app.require_subcommand(1);
  // One Options per subcommand: CLI11 resets flag targets shared between subcommands.
  std::array<Options, 4> options;

  auto add_common = [&](CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config_path, "Config file (JSON), or 'default' for built-in values");
    sub->add_option("--output", o.output_path, "Output CSV path");
    sub->add_flag("-v,--verbose", o.verbosity, "Increase verbosity (-vv prints bisection iterates)");
  };

  auto* solve = app.add_subcommand("solve", "Solve for the optimal offloading factor");
  add_common(solve, options[0]);
  solve->add_option("--scheme", options[0].scheme, "local | so-uav | so-hap | ho (default: all)");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV / plot data");
  add_common(sweep, options[1]);
  sweep->add_option("--scheme", options[1].scheme, "Restrict the sweep to one scheme");
  sweep->add_option("--axis", options[1].axis, "k | n_ul | c_gv | uav | hap");

  auto* validate_cmd = app.add_subcommand("validate", "Check a config and print derived quantities");
  add_common(validate_cmd, options[2]);

  auto* budget = app.add_subcommand("budget", "Print the link budget of every link");
  add_common(budget, options[3]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (*solve) {
      return cmd_solve(options[0], out, err);
    }
    if (*sweep) {
      return cmd_sweep(options[1], out, err);
    }
    if (*validate_cmd) {
      return cmd_validate(options[2], out, err);
    }
    return cmd_budget(options[3], out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

} // namespace ntnvec::cli
