#include "hetsim/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "hetsim/errors.hpp"

namespace hetsim {

namespace {

std::string optional_number(const std::optional<double>& v)
{
  return v ? format_number(*v) : std::string();
}

nlohmann::json optional_json(const std::optional<double>& v)
{
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept
{
  if (name == "csv")
    return OutputFormat::Csv;
  if (name == "jsonl")
    return OutputFormat::JsonLines;
  return std::nullopt;
}

std::string format_number(double value)
{
  char buf[512];
  const auto r = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (r.ec != std::errc{}) {
    const auto g = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, g.ptr);
  }
  return std::string(buf, r.ptr);
}

std::vector<RadiusRow> radius_table(const Scenario& scenario, std::span<const MetroAntenna> patterns,
                                    std::span<const double> tilts_deg)
{
  std::vector<RadiusRow> rows;
  for (MetroAntenna a : patterns) {
    const double hpbw = vertical_hpbw_deg(make_metro_pattern(a));
    for (double t : tilts_deg) {
      if (!supports_downtilt(a) && t != 0.0)
        continue;
      rows.push_back(RadiusRow{a, t, hpbw, scenario.metro.height_m,
                               cell_radius(scenario.metro.height_m, scenario.user_height_m, t, hpbw)});
    }
  }
  return rows;
}

std::string format_sweep(std::span<const SweepRow> rows, OutputFormat format)
{
  std::string out;
  if (format == OutputFormat::Csv) {
    out += kSweepCsvHeader;
    out += '\n';
    for (const SweepRow& r : rows) {
      const NetworkMetrics& m = r.metrics;
      out += std::string(to_string(r.cell.antenna)) + ',' + format_number(r.cell.downtilt_deg) +
             ',' + std::string(to_string(r.cell.power_mode)) + ',' +
             format_number(r.metro_tx_power_dbm) + ',' + format_number(m.ase) + ',' +
             format_number(m.ase_stderr) + ',' + format_number(m.avg_user_rate) + ',' +
             format_number(m.rate_stderr) + ',' + format_number(m.metro_fraction) + ',' +
             optional_number(r.cell_radius_m) + ',' + std::to_string(r.drops) + ',' +
             std::to_string(r.seed) + '\n';
    }
    return out;
  }
  for (const SweepRow& r : rows) {
    const NetworkMetrics& m = r.metrics;
    nlohmann::ordered_json j;
    j["pattern"] = to_string(r.cell.antenna);
    j["downtilt_deg"] = r.cell.downtilt_deg;
    j["power_mode"] = to_string(r.cell.power_mode);
    j["p2_dbm"] = r.metro_tx_power_dbm;
    j["ase_bps_hz_km2"] = m.ase;
    j["ase_stderr"] = m.ase_stderr;
    j["avg_rate_bps_hz"] = m.avg_user_rate;
    j["rate_stderr"] = m.rate_stderr;
    j["metro_fraction"] = m.metro_fraction;
    j["cell_radius_m"] = optional_json(r.cell_radius_m);
    j["drops"] = r.drops;
    j["seed"] = r.seed;
    j["r1_bps_hz"] = m.r1;
    j["r2_bps_hz"] = m.r2;
    j["macro_drops"] = m.macro_drops;
    j["metro_drops"] = m.metro_drops;
    j["macro_density_per_km2"] = r.macro_density_per_km2;
    j["metro_density_per_km2"] = r.metro_density_per_km2;
    j["macro_tier_empty"] = m.macro_tier_empty;
    j["metro_tier_empty"] = m.metro_tier_empty;
    out += j.dump() + '\n';
  }
  return out;
}

std::string format_radius(std::span<const RadiusRow> rows, OutputFormat format)
{
  std::string out;
  if (format == OutputFormat::Csv) {
    out += kRadiusCsvHeader;
    out += '\n';
    for (const RadiusRow& r : rows) {
      std::string display;
      if (r.radius_m) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f", *r.radius_m);
        display = buf;
      }
      out += std::string(to_string(r.pattern)) + ',' + format_number(r.downtilt_deg) + ',' +
             format_number(r.vert_hpbw_deg) + ',' + format_number(r.height_m) + ',' +
             optional_number(r.radius_m) + ',' + display + '\n';
    }
    return out;
  }
  for (const RadiusRow& r : rows) {
    nlohmann::ordered_json j;
    j["pattern"] = to_string(r.pattern);
    j["downtilt_deg"] = r.downtilt_deg;
    j["vert_hpbw_deg"] = r.vert_hpbw_deg;
    j["height_m"] = r.height_m;
    j["cell_radius_m"] = optional_json(r.radius_m);
    out += j.dump() + '\n';
  }
  return out;
}

void emit_results(const std::filesystem::path& path, std::string_view content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

} // namespace hetsim
