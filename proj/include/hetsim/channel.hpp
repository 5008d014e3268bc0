#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include "hetsim/geometry.hpp"
#include "hetsim/random.hpp"

// Per-link received power:
//   P_rx [dBm] = P_tx + G(phi, theta, tilt) - L(d) + K * gamma,   times |h_w|^2 ~ Exp(1)
// where K is the number of blocking buildings and gamma the per-building attenuation (dB).

namespace hetsim {

/// Log-distance path loss L(d) = intercept + slope * log10(d / 1 km).
struct PathLossModel
{
  double intercept_db = 128.1;
  double slope_db = 37.6;  ///< dB per decade, > 0
  Tier tier = Tier::Macro;

  bool operator==(const PathLossModel&) const = default;
};

inline constexpr PathLossModel kMacroPathLoss{128.1, 37.6, Tier::Macro};
inline constexpr PathLossModel kMetroPathLoss{140.7, 36.7, Tier::Metro};

/// Everything beyond geometry needed to turn a link into a mean received power.
struct ChannelParams
{
  PathLossModel macro_path_loss = kMacroPathLoss;
  PathLossModel metro_path_loss = kMetroPathLoss;
  double building_attenuation_db = -40.0;

  const PathLossModel& path_loss_for(Tier tier) const
  {
    return tier == Tier::Macro ? macro_path_loss : metro_path_loss;
  }
};

inline double db_to_linear(double db) { return std::exp(db * (std::numbers::ln10 / 10.0)); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

/// `distance_km` is expected to already respect the 1 m clamp.
double path_loss_db(const PathLossModel& model, double distance_km);

/// K * gamma; the dB form of gamma^K. Throws InvalidParameter for K < 0.
double shadow_db(int blockages, double attenuation_db);

/// Fading-averaged received power from its dB-domain parts.
inline double compose_mean_rx_power_dbm(double tx_power_dbm, double gain_dbi, double path_loss,
                                        double shadow)
{
  return tx_power_dbm + gain_dbi - path_loss + shadow;
}

struct LinkBudget
{
  double mean_rx_power_dbm = 0.0;
  double fading_power = 1.0;  ///< |h_w|^2, unit-mean exponential
  int blockage_count = 0;

  double instantaneous_power_mw() const { return dbm_to_mw(mean_rx_power_dbm) * fading_power; }
};

/// Mean received power of one sector at the user, with geometry and blockage
/// evaluated from scratch. The path-loss argument is the 3D distance.
double mean_rx_power_dbm(const Wap& wap, const Sector& sector, Point3 user,
                         std::span<const Building> buildings, const ChannelParams& channel);

/// Mean power plus one fading draw.
LinkBudget link_budget(const Wap& wap, const Sector& sector, Point3 user,
                       std::span<const Building> buildings, const ChannelParams& channel,
                       RandomStream& rng);

/// |h_w|^2 for Rayleigh small-scale fading.
inline double draw_fading(RandomStream& rng) { return rng.exponential(); }

} // namespace hetsim
