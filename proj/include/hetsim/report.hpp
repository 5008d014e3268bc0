#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetsim/simulation.hpp"

namespace hetsim {

enum class OutputFormat { Csv, JsonLines };

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept;

/// Column order of sweep/simulate CSV output.
inline constexpr std::string_view kSweepCsvHeader =
    "pattern,downtilt_deg,power_mode,p2_dbm,ase_bps_hz_km2,ase_stderr,avg_rate_bps_hz,"
    "rate_stderr,metro_fraction,cell_radius_m,drops,seed";

inline constexpr std::string_view kRadiusCsvHeader =
    "pattern,downtilt_deg,vert_hpbw_deg,height_m,cell_radius_m,cell_radius_display_m";

/// Shortest decimal (fixed notation) that reads back to the same double.
std::string format_number(double value);

struct RadiusRow
{
  MetroAntenna pattern = MetroAntenna::QuasiOmni;
  double downtilt_deg = 0.0;
  double vert_hpbw_deg = 0.0;
  double height_m = 0.0;
  std::optional<double> radius_m;
};

/// Analytic cell radius for every (pattern, tilt) pair, pattern-major.
std::vector<RadiusRow> radius_table(const Scenario& scenario, std::span<const MetroAntenna> patterns,
                                    std::span<const double> tilts_deg);

/// CSV rows carry the kSweepCsvHeader columns; JSON lines add r1, r2, per-tier
/// drop counts, the tier densities, and the empty-tier flags.
std::string format_sweep(std::span<const SweepRow> rows, OutputFormat format);
std::string format_radius(std::span<const RadiusRow> rows, OutputFormat format);

/// Writes `content` to `path`; throws IoError naming the path on failure.
void emit_results(const std::filesystem::path& path, std::string_view content);

} // namespace hetsim
