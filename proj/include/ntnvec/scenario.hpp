#pragma once

// Configuration vocabulary shared by every other module: workload, compute
// platforms, radio links, solver and sweep settings, plus config-file I/O.
//
// Units inside the library are SI base units (bit, FLOP, FLOP/s, Hz, s)
// except carrier frequency (GHz) and distances/altitudes (km), which is
// what the link-budget formulas expect.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ntnvec {

namespace units {
inline constexpr double megabit = 1e6;
inline constexpr double gflop = 1e9;
inline constexpr double megahertz = 1e6;
} // namespace units

namespace constants {
/// Speed of light [km/s].
inline constexpr double speed_of_light = 299792.458;
/// Boltzmann constant in the link-budget dB domain [dBW/(K*Hz)].
inline constexpr double boltzmann_db = -228.6;
} // namespace constants

inline constexpr int kSchemaVersion = 1;

enum class PlatformKind
{
  GV,
  UAV,
  HAP
};

enum class Direction
{
  UL,
  DL
};

enum class PathLossMode
{
  computed,
  override
};

enum class Scheme
{
  LOCAL,
  SO_UAV,
  SO_HAP,
  HO
};

enum class SweepAxis
{
  k,
  n_ul,
  c_gv,
  uav_capacity_and_servers,
  hap_capacity_and_servers
};

std::string_view to_string(PlatformKind kind);
std::string_view to_string(Direction direction);
std::string_view to_string(PathLossMode mode);
std::string_view to_string(Scheme scheme);
std::string_view to_string(SweepAxis axis);

std::optional<PlatformKind> parse_platform_kind(std::string_view text);
std::optional<Direction> parse_direction(std::string_view text);
std::optional<PathLossMode> parse_path_loss_mode(std::string_view text);
/// Accepts both the config spelling ("SO_HAP") and the CLI one ("so-hap").
std::optional<Scheme> parse_scheme(std::string_view text);
/// Accepts the canonical names plus the CLI shorthands "uav" and "hap".
std::optional<SweepAxis> parse_sweep_axis(std::string_view text);

struct Scenario
{
  double density = 200.0;   // k [GV/km^2]
  double area = 1.0;        // A [km^2]
  double frame_rate = 10.0; // r [perceptions/s]
  double ul_bits = 1e6;     // n_UL [bit]
  double dl_bits = 1e5;     // n_DL [bit]
  double load = 1e11;       // C [FLOP per perception]
  double tolerance = 1e-3;  // xi, relative stopping tolerance

  double vehicles() const { return density * area; }
  /// Task arrival rate at an offloading platform, r*k*A [tasks/s].
  double arrival_rate() const { return frame_rate * density * area; }

  bool operator==(const Scenario&) const = default;
};

struct PlatformProfile
{
  PlatformKind kind = PlatformKind::GV;
  double capacity = 0.0; // C_i [FLOP/s]
  int servers = 1;       // c_i
  double altitude = 0.0; // h0 [km]

  bool operator==(const PlatformProfile&) const = default;
};

// Either the aggregates (eirp, g_over_t) or their constituents; a quantity
// may not be given both ways.
struct RadioEndpoint
{
  std::optional<double> eirp;     // dBW
  std::optional<double> g_over_t; // dB/K
  std::optional<double> p_t;      // dBW
  std::optional<double> g_t;      // dBi
  std::optional<double> l_c;      // dB
  std::optional<double> g_r;      // dBi
  std::optional<double> n_f;      // dB
  std::optional<double> t0;       // K
  std::optional<double> t_a;      // K

  bool has_eirp_constituents() const { return p_t || g_t || l_c; }
  bool has_g_over_t_constituents() const { return g_r || n_f || t0 || t_a; }

  bool operator==(const RadioEndpoint&) const = default;
};

struct LinkBudget
{
  double fc = 38.0;         // GHz
  double bandwidth = 400e6; // Hz
  RadioEndpoint tx;
  RadioEndpoint rx;
  PathLossMode path_loss_mode = PathLossMode::override;
  std::optional<double> pl_override; // dB
  double pl_g = 0.0;                 // gaseous absorption [dB]
  double pl_s = 0.0;                 // scintillation [dB]

  bool operator==(const LinkBudget&) const = default;
};

struct PlatformLinks
{
  LinkBudget ul;
  LinkBudget dl;

  const LinkBudget& operator[](Direction d) const { return d == Direction::UL ? ul : dl; }

  bool operator==(const PlatformLinks&) const = default;
};

struct SweepSettings
{
  SweepAxis axis = SweepAxis::k;
  std::vector<double> values;
  std::vector<Scheme> schemes;

  bool operator==(const SweepSettings&) const = default;
};

struct Configuration
{
  Scenario scenario;
  std::map<PlatformKind, PlatformProfile> platforms;
  std::map<PlatformKind, PlatformLinks> links; // UAV and HAP only
  SweepSettings sweep;
  /// Non-fatal findings, e.g. capacities out of the C_HAP >= C_UAV >= C_GV order.
  std::vector<std::string> warnings;

  const PlatformProfile& platform(PlatformKind kind) const;
  PlatformProfile& platform(PlatformKind kind);

  bool operator==(const Configuration&) const = default;
};

/// Default sweep values for an axis, in SI units.
std::vector<double> default_sweep_values(SweepAxis axis);

/// Excess HAP attenuation (PL_g) making FSPL + PL_g reproduce the tabulated
/// 172.76 dB HAP path loss at the default geometry.
double default_hap_excess_loss();

/// Built-in configuration: tabulated defaults for every field.
Configuration default_configuration();

/// Checks every invariant and refreshes `warnings`. Throws ValidationError or
/// AmbiguityError naming the offending field.
void validate(Configuration& config);

/// Parses JSON text; omitted fields take defaults. Throws ParseError on
/// malformed input and ValidationError/AmbiguityError on invariant violations.
Configuration parse_configuration(std::string_view text);

/// Reads and parses a config file. Throws IoError if it cannot be read.
Configuration load_scenario(const std::filesystem::path& path);

/// Canonical JSON form; parse_configuration(serialize(c)) == c.
std::string serialize(const Configuration& config);

} // namespace ntnvec
