#include "hetsim/scenario.hpp"

#include <cmath>
#include <string>

#include "hetsim/errors.hpp"

namespace hetsim {

std::string_view to_string(MetroAntenna antenna) noexcept
{
  switch (antenna) {
  case MetroAntenna::Dipole1: return "dipole1";
  case MetroAntenna::Dipole2: return "dipole2";
  case MetroAntenna::Dipole4: return "dipole4";
  case MetroAntenna::QuasiOmni: return "quasi_omni";
  }
  return "unknown";
}

std::optional<MetroAntenna> parse_metro_antenna(std::string_view name) noexcept
{
  for (MetroAntenna a : kAllMetroAntennas)
    if (to_string(a) == name)
      return a;
  return std::nullopt;
}

AntennaPattern make_metro_pattern(MetroAntenna antenna)
{
  switch (antenna) {
  case MetroAntenna::Dipole1: return make_dipole(78.0, std::nullopt, 2.15);
  case MetroAntenna::Dipole2: return make_dipole(39.0, -10.0, 5.15);
  case MetroAntenna::Dipole4: return make_dipole(19.5, -12.0, 8.15);
  case MetroAntenna::QuasiOmni: return make_quasi_omni(14.0, -16.0, 10.2);
  }
  throw InvalidParameter("unknown metro antenna");
}

std::string_view to_string(PowerMode mode) noexcept
{
  return mode == PowerMode::SamePower ? "same_power" : "same_eirp";
}

std::optional<PowerMode> parse_power_mode(std::string_view name) noexcept
{
  if (name == "same_power")
    return PowerMode::SamePower;
  if (name == "same_eirp")
    return PowerMode::SameEirp;
  return std::nullopt;
}

double same_eirp_tx_power_dbm(MetroAntenna antenna)
{
  return kSameEirpDbm - max_gain_dbi(make_metro_pattern(antenna));
}

double effective_metro_tx_power_dbm(const Scenario& scenario)
{
  if (scenario.power_mode == PowerMode::SameEirp)
    return same_eirp_tx_power_dbm(scenario.metro.antenna);
  return scenario.metro.tx_power_dbm;
}

namespace {

void check(bool ok, const char* key, const std::string& what)
{
  if (!ok)
    throw InvalidParameter(std::string(key) + ": " + what);
}

void check_finite(double v, const char* key)
{
  check(std::isfinite(v), key, "must be finite");
}

void check_path_loss(const PathLossModel& m, const char* intercept_key, const char* slope_key)
{
  check_finite(m.intercept_db, intercept_key);
  check(m.slope_db > 0.0 && std::isfinite(m.slope_db), slope_key, "must be > 0");
}

} // namespace

void validate(const Scenario& s)
{
  check_finite(s.macro.tx_power_dbm, "macro.tx_power_dbm");
  check(s.macro.density_per_km2 >= 0.0, "macro.density_per_km2", "must be >= 0");
  check(s.macro.height_m > 0.0, "macro.height_m", "must be > 0");
  check(s.macro.downtilt_deg >= 0.0 && s.macro.downtilt_deg < 90.0, "macro.downtilt_deg",
        "must lie in [0, 90)");
  try {
    validate(AntennaPattern{s.macro.antenna});
  } catch (const InvalidParameter& e) {
    throw InvalidParameter(std::string("macro antenna: ") + e.what());
  }
  check_path_loss(s.macro.path_loss, "macro.path_loss_intercept_db", "macro.path_loss_slope_db");

  check_finite(s.metro.tx_power_dbm, "metro.tx_power_dbm");
  check(s.metro.density_per_km2 >= 0.0, "metro.density_per_km2", "must be >= 0");
  check(s.metro.height_m > 0.0, "metro.height_m", "must be > 0");
  check(s.metro.downtilt_deg >= 0.0 && s.metro.downtilt_deg < 90.0, "metro.downtilt_deg",
        "must lie in [0, 90)");
  check(supports_downtilt(s.metro.antenna) || s.metro.downtilt_deg == 0.0, "metro.downtilt_deg",
        "a single-element dipole cannot be tilted");
  check_path_loss(s.metro.path_loss, "metro.path_loss_intercept_db", "metro.path_loss_slope_db");
  if (s.power_mode == PowerMode::SameEirp)
    check(s.metro.tx_power_dbm == same_eirp_tx_power_dbm(s.metro.antenna), "metro.tx_power_dbm",
          "does not match the same-EIRP power for metro.pattern");

  check(s.buildings.density_per_km2 >= 0.0, "buildings.density_per_km2", "must be >= 0");
  check(s.buildings.attenuation_db <= 0.0, "buildings.attenuation_db", "must be <= 0");
  check(s.buildings.length_min_m > 0.0, "buildings.length_min_m", "must be > 0");
  check(s.buildings.length_max_m >= s.buildings.length_min_m, "buildings.length_max_m",
        "must be >= buildings.length_min_m");
  check(s.buildings.height_min_m > 0.0, "buildings.height_min_m", "must be > 0");
  check(s.buildings.height_max_m >= s.buildings.height_min_m, "buildings.height_max_m",
        "must be >= buildings.height_min_m");

  check_finite(s.bias_db, "simulation.bias_db");
  check(s.region_radius_km > 0.0 && std::isfinite(s.region_radius_km),
        "simulation.region_radius_km", "must be > 0");
  check(s.user_height_m >= 0.0, "simulation.user_height_m", "must be >= 0");
  check(s.user_height_m < s.metro.height_m && s.user_height_m < s.macro.height_m,
        "simulation.user_height_m", "must be below both WAP heights");
  check(s.drops >= 1, "simulation.drops", "must be >= 1");
  check(s.carrier_frequency_ghz > 0.0, "simulation.carrier_frequency_ghz", "must be > 0");
}

} // namespace hetsim
