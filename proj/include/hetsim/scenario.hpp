#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "hetsim/antenna.hpp"
#include "hetsim/channel.hpp"

// Experiment description. Defaults are the reference macro/metro deployment:
// 46 dBm macros at 2.05 BS/km^2 (750 m ISD equivalent), five metro cells per
// macro sector, and a building field of the same density as the metros.

namespace hetsim {

/// The four metro antenna options compared in the downtilt study.
enum class MetroAntenna : std::uint8_t { Dipole1, Dipole2, Dipole4, QuasiOmni };

inline constexpr std::array<MetroAntenna, 4> kAllMetroAntennas{
    MetroAntenna::Dipole1, MetroAntenna::Dipole2, MetroAntenna::Dipole4, MetroAntenna::QuasiOmni};

std::string_view to_string(MetroAntenna antenna) noexcept;
std::optional<MetroAntenna> parse_metro_antenna(std::string_view name) noexcept;

/// Pattern parameters for each metro option (HPBW, SLL, maximum gain).
AntennaPattern make_metro_pattern(MetroAntenna antenna);

/// A single half-wave dipole has no electrical tilt.
inline bool supports_downtilt(MetroAntenna antenna) { return antenna != MetroAntenna::Dipole1; }

enum class PowerMode : std::uint8_t { SamePower, SameEirp };

std::string_view to_string(PowerMode mode) noexcept;
std::optional<PowerMode> parse_power_mode(std::string_view name) noexcept;

/// Metro EIRP held fixed in SameEirp mode: 33 dBm into a 2.15 dBi single dipole.
inline constexpr double kSameEirpDbm = 33.0 + 2.15;

/// Metro transmit power that keeps P + G_m at kSameEirpDbm.
double same_eirp_tx_power_dbm(MetroAntenna antenna);

struct MacroConfig
{
  double tx_power_dbm = 46.0;
  double density_per_km2 = 2.05;
  double height_m = 30.0;
  double downtilt_deg = 10.0;
  Sector3gpp antenna{};
  PathLossModel path_loss = kMacroPathLoss;

  bool operator==(const MacroConfig&) const = default;
};

struct MetroConfig
{
  double tx_power_dbm = 33.0;
  double density_per_km2 = 30.75;  // 15 per macro BS
  double height_m = 5.0;
  MetroAntenna antenna = MetroAntenna::QuasiOmni;
  double downtilt_deg = 0.0;
  PathLossModel path_loss = kMetroPathLoss;

  bool operator==(const MetroConfig&) const = default;
};

struct BuildingConfig
{
  double density_per_km2 = 30.75;  // same as the metro tier
  double attenuation_db = -40.0;
  double length_min_m = 20.0;
  double length_max_m = 30.0;
  double height_min_m = 10.0;
  double height_max_m = 20.0;

  bool operator==(const BuildingConfig&) const = default;
};

struct Scenario
{
  MacroConfig macro;
  MetroConfig metro;
  BuildingConfig buildings;
  double bias_db = 6.0;
  double region_radius_km = 5.0;
  double user_height_m = 0.0;
  std::uint64_t drops = 10000;
  std::uint64_t master_seed = 1;
  PowerMode power_mode = PowerMode::SamePower;
  double carrier_frequency_ghz = 2.0;  ///< informational; enters only via the path-loss intercepts

  bool operator==(const Scenario&) const = default;

  ChannelParams channel() const
  {
    return ChannelParams{macro.path_loss, metro.path_loss, buildings.attenuation_db};
  }
};

/// Metro transmit power actually used: the configured value in SamePower mode,
/// the EIRP-matched value in SameEirp mode.
double effective_metro_tx_power_dbm(const Scenario& scenario);

/// Throws InvalidParameter naming the offending key (e.g. "metro.downtilt_deg").
void validate(const Scenario& scenario);

} // namespace hetsim
