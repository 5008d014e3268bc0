#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetsim/scenario.hpp"

// Experiment configuration files.
//
// The document is YAML with one mapping per section. Every key is optional and
// defaults to the reference deployment; unknown sections or keys are errors.
//
//   macro:      tx_power_dbm, density_per_km2, height_m, downtilt_deg,
//               horiz_hpbw_deg, fbr_db, vert_hpbw_deg, sll_db, max_gain_dbi,
//               path_loss_intercept_db, path_loss_slope_db
//   metro:      tx_power_dbm, density_per_km2, height_m, pattern, downtilt_deg,
//               path_loss_intercept_db, path_loss_slope_db
//   buildings:  density_per_km2, attenuation_db, length_min_m, length_max_m,
//               height_min_m, height_max_m
//   simulation: bias_db, region_radius_km, user_height_m, drops, seed,
//               power_mode, carrier_frequency_ghz
//   sweep:      patterns, tilt_start_deg, tilt_stop_deg, tilt_step_deg
//   radius:     patterns, tilts_deg
//
// With simulation.power_mode = same_eirp, metro.tx_power_dbm is filled in from
// the pattern's maximum gain; an explicit value must agree with it.

namespace hetsim {

/// Downtilt grid swept by the `sweep` command.
struct SweepGrid
{
  std::vector<MetroAntenna> patterns{kAllMetroAntennas.begin(), kAllMetroAntennas.end()};
  double tilt_start_deg = 0.0;
  double tilt_stop_deg = 40.0;
  double tilt_step_deg = 2.0;

  /// start, start + step, ... up to and including stop (1e-9 deg slack).
  std::vector<double> tilts() const;

  bool operator==(const SweepGrid&) const = default;
};

/// Inputs of the analytic `radius` command.
struct RadiusGrid
{
  std::vector<MetroAntenna> patterns{MetroAntenna::Dipole4, MetroAntenna::QuasiOmni};
  std::vector<double> tilts_deg{10.0, 20.0, 30.0, 40.0};

  bool operator==(const RadiusGrid&) const = default;
};

struct ExperimentConfig
{
  Scenario scenario;
  SweepGrid sweep;
  RadiusGrid radius;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses a configuration document and applies `overrides` ("section.key=value")
/// on top of it. Throws ConfigError naming the key and, where known, the line.
ExperimentConfig parse_config(std::string_view text, std::span<const std::string> overrides = {});

/// Reads and parses a file; a missing or unreadable file is a ConfigError.
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::span<const std::string> overrides = {});

/// Every key written out explicitly; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& config);

/// All recognised "section.key" names.
std::vector<std::string> config_keys();

} // namespace hetsim
