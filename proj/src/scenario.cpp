#include "ntnvec/scenario.hpp"

#include "ntnvec/channel.hpp"
#include "ntnvec/errors.hpp"
#include "ntnvec/latency.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace ntnvec {

ConfigError::ConfigError(std::string field, const std::string& message)
    : Error(field.empty() ? message : field + ": " + message), field_(std::move(field))
{
}

InstabilityError::InstabilityError(double offered, int servers, std::string queue)
    : Error((queue.empty() ? std::string("queue") : queue + " queue") + " unstable: offered traffic G = " +
            std::to_string(offered) + " >= c = " + std::to_string(servers)),
      offered_(offered), servers_(servers), queue_(std::move(queue))
{
}

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<std::string_view, Enum>, N>& table, std::string_view text)
{
  for (const auto& [name, value] : table) {
    if (name == text) {
      return value;
    }
  }
  return std::nullopt;
}

constexpr std::array<std::pair<std::string_view, PlatformKind>, 3> kPlatformNames{{
    {"GV", PlatformKind::GV},
    {"UAV", PlatformKind::UAV},
    {"HAP", PlatformKind::HAP},
}};

constexpr std::array<std::pair<std::string_view, Scheme>, 8> kSchemeNames{{
    {"LOCAL", Scheme::LOCAL},
    {"SO_UAV", Scheme::SO_UAV},
    {"SO_HAP", Scheme::SO_HAP},
    {"HO", Scheme::HO},
    {"local", Scheme::LOCAL},
    {"so-uav", Scheme::SO_UAV},
    {"so-hap", Scheme::SO_HAP},
    {"ho", Scheme::HO},
}};

constexpr std::array<std::pair<std::string_view, SweepAxis>, 7> kAxisNames{{
    {"k", SweepAxis::k},
    {"n_ul", SweepAxis::n_ul},
    {"c_gv", SweepAxis::c_gv},
    {"uav_capacity_and_servers", SweepAxis::uav_capacity_and_servers},
    {"hap_capacity_and_servers", SweepAxis::hap_capacity_and_servers},
    {"uav", SweepAxis::uav_capacity_and_servers},
    {"hap", SweepAxis::hap_capacity_and_servers},
}};

std::string join(const std::string& path, std::string_view key)
{
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void require_object(const json& node, const std::string& path)
{
  if (!node.is_object()) {
    throw ValidationError(path, "expected an object");
  }
}

void check_keys(const json& node, const std::string& path, std::initializer_list<std::string_view> allowed)
{
  for (const auto& item : node.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ValidationError(join(path, item.key()), "unknown key");
    }
  }
}

double as_number(const json& node, const std::string& path)
{
  if (!node.is_number()) {
    throw ValidationError(path, "expected a number");
  }
  const double value = node.get<double>();
  if (!std::isfinite(value)) {
    throw ValidationError(path, "must be finite");
  }
  return value;
}

void read_number(const json& node, std::string_view key, const std::string& path, double& target)
{
  if (auto it = node.find(key); it != node.end()) {
    target = as_number(*it, join(path, key));
  }
}

void read_optional(const json& node, std::string_view key, const std::string& path, std::optional<double>& target)
{
  if (auto it = node.find(key); it != node.end()) {
    target = as_number(*it, join(path, key));
  }
}

void read_integer(const json& node, std::string_view key, const std::string& path, int& target)
{
  auto it = node.find(key);
  if (it == node.end()) {
    return;
  }
  const std::string field = join(path, key);
  const double value = as_number(*it, field);
  if (value != std::floor(value) || std::abs(value) > 1e9) {
    throw ValidationError(field, "must be an integer");
  }
  target = static_cast<int>(value);
}

std::string read_string(const json& node, const std::string& path)
{
  if (!node.is_string()) {
    throw ValidationError(path, "expected a string");
  }
  return node.get<std::string>();
}

void parse_scenario(const json& node, Scenario& scenario)
{
  const std::string path = "scenario";
  require_object(node, path);
  check_keys(node, path, {"k", "A", "r", "n_ul", "n_dl", "C"});
  read_number(node, "k", path, scenario.density);
  read_number(node, "A", path, scenario.area);
  read_number(node, "r", path, scenario.frame_rate);
  read_number(node, "n_ul", path, scenario.ul_bits);
  read_number(node, "n_dl", path, scenario.dl_bits);
  read_number(node, "C", path, scenario.load);
}

void parse_solver(const json& node, Scenario& scenario)
{
  require_object(node, "solver");
  check_keys(node, "solver", {"xi"});
  read_number(node, "xi", "solver", scenario.tolerance);
}

void parse_platforms(const json& node, Configuration& config)
{
  require_object(node, "platforms");
  check_keys(node, "platforms", {"GV", "UAV", "HAP"});
  for (const auto& item : node.items()) {
    const auto kind = *parse_platform_kind(item.key());
    const std::string path = join("platforms", item.key());
    require_object(item.value(), path);
    check_keys(item.value(), path, {"capacity", "servers", "altitude"});
    PlatformProfile& profile = config.platform(kind);
    read_number(item.value(), "capacity", path, profile.capacity);
    read_integer(item.value(), "servers", path, profile.servers);
    read_number(item.value(), "altitude", path, profile.altitude);
  }
}

RadioEndpoint parse_endpoint(const json& node, const std::string& path)
{
  require_object(node, path);
  check_keys(node, path, {"eirp", "g_over_t", "p_t", "g_t", "l_c", "g_r", "n_f", "t0", "t_a"});
  RadioEndpoint endpoint;
  read_optional(node, "eirp", path, endpoint.eirp);
  read_optional(node, "g_over_t", path, endpoint.g_over_t);
  read_optional(node, "p_t", path, endpoint.p_t);
  read_optional(node, "g_t", path, endpoint.g_t);
  read_optional(node, "l_c", path, endpoint.l_c);
  read_optional(node, "g_r", path, endpoint.g_r);
  read_optional(node, "n_f", path, endpoint.n_f);
  read_optional(node, "t0", path, endpoint.t0);
  read_optional(node, "t_a", path, endpoint.t_a);
  return endpoint;
}

void parse_link(const json& node, const std::string& path, LinkBudget& link)
{
  require_object(node, path);
  check_keys(node, path, {"fc", "bandwidth", "tx", "rx", "path_loss_mode", "pl_override", "pl_g", "pl_s"});
  read_number(node, "fc", path, link.fc);
  read_number(node, "bandwidth", path, link.bandwidth);
  // An endpoint given in the file replaces the default one wholesale, so the
  // file's constituents never mix with a default aggregate.
  if (auto it = node.find("tx"); it != node.end()) {
    link.tx = parse_endpoint(*it, join(path, "tx"));
  }
  if (auto it = node.find("rx"); it != node.end()) {
    link.rx = parse_endpoint(*it, join(path, "rx"));
  }
  if (auto it = node.find("path_loss_mode"); it != node.end()) {
    const std::string field = join(path, "path_loss_mode");
    const auto mode = parse_path_loss_mode(read_string(*it, field));
    if (!mode) {
      throw ValidationError(field, "expected \"computed\" or \"override\"");
    }
    link.path_loss_mode = *mode;
    if (*mode == PathLossMode::computed && !node.contains("pl_override")) {
      link.pl_override.reset();
    }
  }
  read_optional(node, "pl_override", path, link.pl_override);
  read_number(node, "pl_g", path, link.pl_g);
  read_number(node, "pl_s", path, link.pl_s);
}

void parse_links(const json& node, Configuration& config)
{
  require_object(node, "links");
  check_keys(node, "links", {"UAV", "HAP"});
  for (const auto& item : node.items()) {
    const auto kind = *parse_platform_kind(item.key());
    const std::string path = join("links", item.key());
    require_object(item.value(), path);
    check_keys(item.value(), path, {"UL", "DL"});
    PlatformLinks& links = config.links[kind];
    if (auto it = item.value().find("UL"); it != item.value().end()) {
      parse_link(*it, join(path, "UL"), links.ul);
    }
    if (auto it = item.value().find("DL"); it != item.value().end()) {
      parse_link(*it, join(path, "DL"), links.dl);
    }
  }
}

void parse_sweep(const json& node, Configuration& config)
{
  require_object(node, "sweep");
  check_keys(node, "sweep", {"axis", "values", "schemes"});
  SweepSettings& sweep = config.sweep;
  if (auto it = node.find("axis"); it != node.end()) {
    const auto axis = parse_sweep_axis(read_string(*it, "sweep.axis"));
    if (!axis) {
      throw ValidationError("sweep.axis", "unknown axis");
    }
    if (*axis != sweep.axis) {
      sweep.values = default_sweep_values(*axis);
    }
    sweep.axis = *axis;
  }
  if (auto it = node.find("values"); it != node.end()) {
    if (!it->is_array()) {
      throw ValidationError("sweep.values", "expected an array");
    }
    sweep.values.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      sweep.values.push_back(as_number((*it)[i], "sweep.values[" + std::to_string(i) + "]"));
    }
  }
  if (auto it = node.find("schemes"); it != node.end()) {
    if (!it->is_array()) {
      throw ValidationError("sweep.schemes", "expected an array");
    }
    sweep.schemes.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string field = "sweep.schemes[" + std::to_string(i) + "]";
      const auto scheme = parse_scheme(read_string((*it)[i], field));
      if (!scheme) {
        throw ValidationError(field, "unknown scheme");
      }
      sweep.schemes.push_back(*scheme);
    }
  }
}

void require_positive(double value, const std::string& field)
{
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(field, "must be > 0");
  }
}

void require_non_negative(double value, const std::string& field)
{
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ValidationError(field, "must be >= 0");
  }
}

void validate_transmitter(const RadioEndpoint& tx, const std::string& path)
{
  if (tx.eirp && tx.has_eirp_constituents()) {
    throw AmbiguityError(join(path, "eirp"), "given both directly and as p_t/l_c/g_t");
  }
  if (tx.g_over_t && tx.has_g_over_t_constituents()) {
    throw AmbiguityError(join(path, "g_over_t"), "given both directly and as g_r/n_f/t0/t_a");
  }
  if (!tx.eirp && !(tx.p_t && tx.g_t && tx.l_c)) {
    throw ValidationError(join(path, "eirp"), "missing: give eirp or all of p_t, l_c, g_t");
  }
}

void validate_receiver(const RadioEndpoint& rx, const std::string& path)
{
  if (rx.g_over_t && rx.has_g_over_t_constituents()) {
    throw AmbiguityError(join(path, "g_over_t"), "given both directly and as g_r/n_f/t0/t_a");
  }
  if (rx.eirp && rx.has_eirp_constituents()) {
    throw AmbiguityError(join(path, "eirp"), "given both directly and as p_t/l_c/g_t");
  }
  if (rx.g_over_t) {
    return;
  }
  if (!(rx.g_r && rx.n_f && rx.t0 && rx.t_a)) {
    throw ValidationError(join(path, "g_over_t"), "missing: give g_over_t or all of g_r, n_f, t0, t_a");
  }
  require_positive(*rx.t0, join(path, "t0"));
  require_positive(*rx.t_a, join(path, "t_a"));
  try {
    channel::g_over_t(*rx.g_r, *rx.n_f, *rx.t0, *rx.t_a);
  } catch (const DomainError& e) {
    throw ValidationError(join(path, "g_over_t"), e.what());
  }
}

void validate_link(const LinkBudget& link, const std::string& path)
{
  require_positive(link.fc, join(path, "fc"));
  require_positive(link.bandwidth, join(path, "bandwidth"));
  if (link.path_loss_mode == PathLossMode::override && !link.pl_override) {
    throw ValidationError(join(path, "pl_override"), "required when path_loss_mode is override");
  }
  if (link.path_loss_mode == PathLossMode::computed && link.pl_override) {
    throw ValidationError(join(path, "pl_override"), "only allowed when path_loss_mode is override");
  }
  validate_transmitter(link.tx, join(path, "tx"));
  validate_receiver(link.rx, join(path, "rx"));
}

ordered_json endpoint_json(const RadioEndpoint& endpoint)
{
  ordered_json out = ordered_json::object();
  const std::array<std::pair<const char*, const std::optional<double>*>, 9> fields{{
      {"eirp", &endpoint.eirp},
      {"g_over_t", &endpoint.g_over_t},
      {"p_t", &endpoint.p_t},
      {"g_t", &endpoint.g_t},
      {"l_c", &endpoint.l_c},
      {"g_r", &endpoint.g_r},
      {"n_f", &endpoint.n_f},
      {"t0", &endpoint.t0},
      {"t_a", &endpoint.t_a},
  }};
  for (const auto& [name, value] : fields) {
    if (*value) {
      out[name] = **value;
    }
  }
  return out;
}

ordered_json link_json(const LinkBudget& link)
{
  ordered_json out;
  out["fc"] = link.fc;
  out["bandwidth"] = link.bandwidth;
  out["tx"] = endpoint_json(link.tx);
  out["rx"] = endpoint_json(link.rx);
  out["path_loss_mode"] = std::string(to_string(link.path_loss_mode));
  if (link.pl_override) {
    out["pl_override"] = *link.pl_override;
  }
  out["pl_g"] = link.pl_g;
  out["pl_s"] = link.pl_s;
  return out;
}

LinkBudget table_link(double eirp, double g_over_t, double path_loss, double pl_g)
{
  LinkBudget link;
  link.tx.eirp = eirp;
  link.rx.g_over_t = g_over_t;
  link.path_loss_mode = PathLossMode::override;
  link.pl_override = path_loss;
  link.pl_g = pl_g;
  return link;
}

} // namespace

std::string_view to_string(PlatformKind kind)
{
  switch (kind) {
  case PlatformKind::GV: return "GV";
  case PlatformKind::UAV: return "UAV";
  case PlatformKind::HAP: return "HAP";
  }
  return "?";
}

std::string_view to_string(Direction direction)
{
  return direction == Direction::UL ? "UL" : "DL";
}

std::string_view to_string(PathLossMode mode)
{
  return mode == PathLossMode::computed ? "computed" : "override";
}

std::string_view to_string(Scheme scheme)
{
  switch (scheme) {
  case Scheme::LOCAL: return "LOCAL";
  case Scheme::SO_UAV: return "SO_UAV";
  case Scheme::SO_HAP: return "SO_HAP";
  case Scheme::HO: return "HO";
  }
  return "?";
}

std::string_view to_string(SweepAxis axis)
{
  switch (axis) {
  case SweepAxis::k: return "k";
  case SweepAxis::n_ul: return "n_ul";
  case SweepAxis::c_gv: return "c_gv";
  case SweepAxis::uav_capacity_and_servers: return "uav_capacity_and_servers";
  case SweepAxis::hap_capacity_and_servers: return "hap_capacity_and_servers";
  }
  return "?";
}

std::optional<PlatformKind> parse_platform_kind(std::string_view text)
{
  return lookup(kPlatformNames, text);
}

std::optional<Direction> parse_direction(std::string_view text)
{
  if (text == "UL") {
    return Direction::UL;
  }
  if (text == "DL") {
    return Direction::DL;
  }
  return std::nullopt;
}

std::optional<PathLossMode> parse_path_loss_mode(std::string_view text)
{
  if (text == "computed") {
    return PathLossMode::computed;
  }
  if (text == "override") {
    return PathLossMode::override;
  }
  return std::nullopt;
}

std::optional<Scheme> parse_scheme(std::string_view text)
{
  return lookup(kSchemeNames, text);
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view text)
{
  return lookup(kAxisNames, text);
}

const PlatformProfile& Configuration::platform(PlatformKind kind) const
{
  auto it = platforms.find(kind);
  if (it == platforms.end()) {
    throw ValidationError(join("platforms", to_string(kind)), "not configured");
  }
  return it->second;
}

PlatformProfile& Configuration::platform(PlatformKind kind)
{
  auto [it, inserted] = platforms.try_emplace(kind);
  if (inserted) {
    it->second.kind = kind;
  }
  return it->second;
}

std::vector<double> default_sweep_values(SweepAxis axis)
{
  std::vector<double> values;
  switch (axis) {
  case SweepAxis::k:
    values = {25, 50, 100, 200, 350, 500};
    break;
  case SweepAxis::n_ul:
    for (double mb : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0}) {
      values.push_back(mb * units::megabit);
    }
    break;
  case SweepAxis::c_gv:
    for (double g : {100.0, 200.0, 500.0, 1000.0}) {
      values.push_back(g * units::gflop);
    }
    break;
  case SweepAxis::uav_capacity_and_servers:
    for (double g = 1000.0; g <= 4000.0; g += 500.0) {
      values.push_back(g * units::gflop);
    }
    break;
  case SweepAxis::hap_capacity_and_servers:
    for (double g = 3000.0; g <= 10000.0; g += 1000.0) {
      values.push_back(g * units::gflop);
    }
    break;
  }
  return values;
}

double default_hap_excess_loss()
{
  return 172.76 - channel::fspl(38.0, latency::avg_distance(1.0, 20.0));
}

Configuration default_configuration()
{
  Configuration config;
  config.platforms[PlatformKind::GV] = {PlatformKind::GV, 500e9, 1, 0.0};
  config.platforms[PlatformKind::UAV] = {PlatformKind::UAV, 1500e9, 4, 0.1};
  config.platforms[PlatformKind::HAP] = {PlatformKind::HAP, 3500e9, 12, 20.0};

  constexpr double kGvEirp = 29.0;
  constexpr double kGvGt = 12.15;
  config.links[PlatformKind::UAV] = {table_link(kGvEirp, -11.6, 101.98, 0.0), table_link(-10.0, kGvGt, 101.98, 0.0)};
  const double hap_excess = default_hap_excess_loss();
  config.links[PlatformKind::HAP] = {table_link(kGvEirp, 27.7, 172.76, hap_excess),
                                     table_link(27.9, kGvGt, 172.76, hap_excess)};

  config.sweep.axis = SweepAxis::k;
  config.sweep.values = default_sweep_values(SweepAxis::k);
  config.sweep.schemes = {Scheme::LOCAL, Scheme::SO_UAV, Scheme::SO_HAP, Scheme::HO};
  return config;
}

void validate(Configuration& config)
{
  const Scenario& s = config.scenario;
  require_positive(s.density, "scenario.k");
  require_positive(s.area, "scenario.A");
  require_positive(s.frame_rate, "scenario.r");
  require_non_negative(s.ul_bits, "scenario.n_ul");
  require_non_negative(s.dl_bits, "scenario.n_dl");
  if (s.dl_bits > s.ul_bits) {
    throw ValidationError("scenario.n_dl", "must not exceed n_ul");
  }
  require_positive(s.load, "scenario.C");
  if (!(s.tolerance > 0.0 && s.tolerance < 1.0)) {
    throw ValidationError("solver.xi", "must lie in (0, 1)");
  }

  for (PlatformKind kind : {PlatformKind::GV, PlatformKind::UAV, PlatformKind::HAP}) {
    const std::string path = join("platforms", to_string(kind));
    const PlatformProfile& p = std::as_const(config).platform(kind);
    if (p.kind != kind) {
      throw ValidationError(path, "kind mismatch");
    }
    require_positive(p.capacity, join(path, "capacity"));
    if (p.servers < 1) {
      throw ValidationError(join(path, "servers"), "must be >= 1");
    }
    require_non_negative(p.altitude, join(path, "altitude"));
  }

  for (PlatformKind kind : {PlatformKind::UAV, PlatformKind::HAP}) {
    const std::string path = join("links", to_string(kind));
    auto it = config.links.find(kind);
    if (it == config.links.end()) {
      throw ValidationError(path, "not configured");
    }
    validate_link(it->second.ul, join(path, "UL"));
    validate_link(it->second.dl, join(path, "DL"));
  }

  const SweepSettings& sweep = config.sweep;
  if (sweep.values.empty()) {
    throw ValidationError("sweep.values", "must not be empty");
  }
  for (std::size_t i = 1; i < sweep.values.size(); ++i) {
    if (!(sweep.values[i] > sweep.values[i - 1])) {
      throw ValidationError("sweep.values", "must be strictly increasing");
    }
  }
  if (sweep.schemes.empty()) {
    throw ValidationError("sweep.schemes", "must not be empty");
  }

  config.warnings.clear();
  const double gv = config.platform(PlatformKind::GV).capacity;
  const double uav = config.platform(PlatformKind::UAV).capacity;
  const double hap = config.platform(PlatformKind::HAP).capacity;
  if (hap < uav || uav < gv) {
    config.warnings.push_back("platform capacities are not ordered C_HAP >= C_UAV >= C_GV");
  }
}

Configuration parse_configuration(std::string_view text)
{
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ParseError("", e.what());
  }
  require_object(root, "");
  check_keys(root, "", {"schema_version", "scenario", "solver", "platforms", "links", "sweep"});

  if (auto it = root.find("schema_version"); it != root.end()) {
    if (!it->is_number_integer() || it->get<int>() != kSchemaVersion) {
      throw ValidationError("schema_version", "unsupported, expected " + std::to_string(kSchemaVersion));
    }
  }

  Configuration config = default_configuration();
  if (auto it = root.find("scenario"); it != root.end()) {
    parse_scenario(*it, config.scenario);
  }
  if (auto it = root.find("solver"); it != root.end()) {
    parse_solver(*it, config.scenario);
  }
  if (auto it = root.find("platforms"); it != root.end()) {
    parse_platforms(*it, config);
  }
  if (auto it = root.find("links"); it != root.end()) {
    parse_links(*it, config);
  }
  if (auto it = root.find("sweep"); it != root.end()) {
    parse_sweep(*it, config);
  }
  validate(config);
  return config;
}

Configuration load_scenario(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("cannot read config file " + path.string());
  }
  return parse_configuration(buffer.str());
}

std::string serialize(const Configuration& config)
{
  ordered_json root;
  root["schema_version"] = kSchemaVersion;

  const Scenario& s = config.scenario;
  root["scenario"] = {{"k", s.density}, {"A", s.area},        {"r", s.frame_rate},
                      {"n_ul", s.ul_bits}, {"n_dl", s.dl_bits}, {"C", s.load}};
  root["solver"] = {{"xi", s.tolerance}};

  ordered_json platforms = ordered_json::object();
  for (const auto& [kind, p] : config.platforms) {
    platforms[std::string(to_string(kind))] = {
        {"capacity", p.capacity}, {"servers", p.servers}, {"altitude", p.altitude}};
  }
  root["platforms"] = platforms;

  ordered_json links = ordered_json::object();
  for (const auto& [kind, pair] : config.links) {
    links[std::string(to_string(kind))] = {{"UL", link_json(pair.ul)}, {"DL", link_json(pair.dl)}};
  }
  root["links"] = links;

  ordered_json schemes = ordered_json::array();
  for (Scheme scheme : config.sweep.schemes) {
    schemes.push_back(std::string(to_string(scheme)));
  }
  root["sweep"] = {{"axis", std::string(to_string(config.sweep.axis))},
                   {"values", config.sweep.values},
                   {"schemes", schemes}};
  return root.dump(2) + "\n";
}

} // namespace ntnvec
