#include "hetsim/channel.hpp"

#include "hetsim/errors.hpp"

namespace hetsim {

double path_loss_db(const PathLossModel& model, double distance_km)
{
  return model.intercept_db + model.slope_db * std::log10(distance_km);
}

double shadow_db(int blockages, double attenuation_db)
{
  if (blockages < 0)
    throw InvalidParameter("blockage count must be non-negative");
  return blockages * attenuation_db;
}

namespace {

double mean_power_with_count(const Wap& wap, const Sector& sector, Point3 user, int blockages,
                             const ChannelParams& channel)
{
  const LinkGeometry g = link_geometry(wap, sector, user.xy, user.z);
  const double gain = total_gain_dbi(sector.pattern, g.azimuth_offset_deg, g.elevation_deg,
                                     sector.downtilt_deg);
  const double loss = path_loss_db(channel.path_loss_for(wap.tier), g.distance_3d_m / 1000.0);
  return compose_mean_rx_power_dbm(wap.tx_power_dbm, gain, loss,
                                   shadow_db(blockages, channel.building_attenuation_db));
}

} // namespace

double mean_rx_power_dbm(const Wap& wap, const Sector& sector, Point3 user,
                         std::span<const Building> buildings, const ChannelParams& channel)
{
  const int k = count_blockages(Point3{wap.position, wap.height_m}, user, buildings);
  return mean_power_with_count(wap, sector, user, k, channel);
}

LinkBudget link_budget(const Wap& wap, const Sector& sector, Point3 user,
                       std::span<const Building> buildings, const ChannelParams& channel,
                       RandomStream& rng)
{
  LinkBudget b;
  b.blockage_count = count_blockages(Point3{wap.position, wap.height_m}, user, buildings);
  b.mean_rx_power_dbm = mean_power_with_count(wap, sector, user, b.blockage_count, channel);
  b.fading_power = draw_fading(rng);
  return b;
}

} // namespace hetsim
