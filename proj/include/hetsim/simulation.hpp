#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hetsim/association.hpp"
#include "hetsim/geometry.hpp"
#include "hetsim/scenario.hpp"

namespace hetsim {

/// Outcome for the typical user of one drop.
struct DropResult
{
  Tier tier = Tier::Macro;
  double spectral_efficiency = 0.0;  ///< log2(1 + SIR), b/s/Hz
  double sir_db = 0.0;
  int blockage_count_serving = 0;

  bool operator==(const DropResult&) const = default;
};

struct NetworkMetrics
{
  double ase = 0.0;  ///< b/s/Hz/km^2, 3*lambda1*r1 + lambda2*r2
  double ase_stderr = 0.0;
  double avg_user_rate = 0.0;  ///< b/s/Hz, r1*(1-f) + r2*f
  double rate_stderr = 0.0;
  double metro_fraction = 0.0;  ///< f
  double r1 = 0.0;  ///< mean spectral efficiency of macro-served drops
  double r2 = 0.0;  ///< mean spectral efficiency of metro-served drops
  std::uint64_t macro_drops = 0;
  std::uint64_t metro_drops = 0;
  bool macro_tier_empty = false;  ///< r1 forced to 0: no drop was macro-served
  bool metro_tier_empty = false;

  bool operator==(const NetworkMetrics&) const = default;
};

/// Per-tier conditional means, standard errors from per-tier sample variances.
/// A tier without drops contributes 0 and sets its *_tier_empty flag.
/// Throws InvalidParameter for an empty result list.
NetworkMetrics aggregate(std::span<const DropResult> results, double macro_density_per_km2,
                         double metro_density_per_km2);

/// One sector-to-user link of a realized drop: the parts that do not depend on
/// the metro antenna, tilt, or power.
struct LinkSample
{
  Tier tier = Tier::Macro;
  std::uint32_t wap_index = 0;
  std::uint32_t sector_index = 0;
  LinkGeometry geometry;
  int blockages = 0;
  double fading = 1.0;
};

/// Random state of one drop: placement, blockage counts, and one fading draw per
/// link. Placement and fading come from separate streams of the drop, so the
/// fading draws do not depend on how many buildings were sampled.
struct DropRealization
{
  std::uint64_t drop_index = 0;
  std::uint64_t attempt = 0;  ///< > 0 when earlier placements were degenerate
  Network network;
  std::vector<LinkSample> links;
};

/// Resamples (up to kMaxDropAttempts) while the window holds fewer than two sectors.
inline constexpr std::uint64_t kMaxDropAttempts = 16;

DropRealization realize_drop(const Scenario& scenario, std::uint64_t drop_index);

struct MetroSetting
{
  MetroAntenna antenna = MetroAntenna::QuasiOmni;
  double downtilt_deg = 0.0;
  double tx_power_dbm = 33.0;
};

MetroSetting metro_setting(const Scenario& scenario);

/// Associates the origin user and computes its SIR under the given metro setting.
DropResult evaluate_drop(const DropRealization& drop, const Scenario& scenario,
                         const MetroSetting& metro);

/// realize_drop + evaluate_drop with the scenario's own metro setting.
DropResult run_drop(const Scenario& scenario, std::uint64_t drop_index);

/// Radius of the ground footprint bounded by the outer -3 dB edge of the main
/// beam, in meters, or nullopt when that edge points at or above the horizon.
std::optional<double> cell_radius(double height_m, double user_height_m, double downtilt_deg,
                                  double vert_hpbw_deg);

struct SweepCell
{
  MetroAntenna antenna = MetroAntenna::QuasiOmni;
  double downtilt_deg = 0.0;
  PowerMode power_mode = PowerMode::SamePower;
};

struct SweepRow
{
  SweepCell cell;
  double metro_tx_power_dbm = 0.0;
  NetworkMetrics metrics;
  std::optional<double> cell_radius_m;
  double macro_density_per_km2 = 0.0;
  double metro_density_per_km2 = 0.0;
  std::uint64_t drops = 0;
  std::uint64_t seed = 0;
};

/// Metro transmit power for a cell: configured power, or the EIRP-matched power.
double cell_tx_power_dbm(const Scenario& scenario, const SweepCell& cell);

/// Runs scenario.drops drops and evaluates every cell on each of them, so all
/// rows share placements and fading. Output is identical for any worker count.
/// Throws InvalidParameter for a tilted single dipole.
std::vector<SweepRow> run_cells(const Scenario& scenario, std::span<const SweepCell> cells,
                                unsigned workers);

/// Pattern-major grid. A single dipole contributes only its 0 degree row; asking
/// for it without 0 in `tilts` is an error.
std::vector<SweepRow> run_sweep(const Scenario& scenario, std::span<const double> tilts,
                                std::span<const MetroAntenna> patterns, PowerMode mode,
                                unsigned workers);

/// The scenario's own (pattern, tilt, power mode) cell.
SweepRow simulate(const Scenario& scenario, unsigned workers);

} // namespace hetsim
