#include "hetsim/association.hpp"

#include <optional>

#include "hetsim/errors.hpp"

namespace hetsim {

double asair_db(std::span<const SectorPower> links, std::size_t candidate)
{
  if (links.size() < 2)
    throw DegenerateScenario("ASAIR needs at least one interfering sector");
  double interference = 0.0;
  for (std::size_t k = 0; k < links.size(); ++k)
    if (k != candidate)
      interference += links[k].mean_power_mw;
  return linear_to_db(links[candidate].mean_power_mw / interference);
}

AssociationDecision associate(std::span<const SectorPower> links, double bias_db)
{
  std::optional<std::size_t> best_macro, best_metro;
  for (std::size_t k = 0; k < links.size(); ++k) {
    auto& best = links[k].tier == Tier::Macro ? best_macro : best_metro;
    if (!best || links[k].mean_power_mw > links[*best].mean_power_mw)
      best = k;
  }
  if (!best_macro && !best_metro)
    throw DegenerateScenario("no WAP available for association");

  auto decide = [&](std::size_t k, double asair) {
    return AssociationDecision{links[k].tier, links[k].wap_index, links[k].sector_index, asair};
  };
  if (!best_metro)
    return decide(*best_macro, asair_db(links, *best_macro));
  if (!best_macro)
    return decide(*best_metro, asair_db(links, *best_metro));

  const double rho_macro = asair_db(links, *best_macro);
  const double rho_metro = asair_db(links, *best_metro);
  if (rho_metro >= rho_macro - bias_db)
    return decide(*best_metro, rho_metro);
  return decide(*best_macro, rho_macro);
}

std::vector<SectorPower> sector_powers(Point3 user, std::span<const Wap> waps,
                                       std::span<const Building> buildings,
                                       const ChannelParams& channel)
{
  std::vector<SectorPower> out;
  for (std::size_t w = 0; w < waps.size(); ++w) {
    for (std::size_t s = 0; s < waps[w].sectors.size(); ++s) {
      const double dbm = mean_rx_power_dbm(waps[w], waps[w].sectors[s], user, buildings, channel);
      out.push_back(SectorPower{waps[w].tier, w, s, dbm_to_mw(dbm)});
    }
  }
  return out;
}

double asair_db(std::size_t wap_index, std::size_t sector_index, std::span<const Wap> waps,
                Point3 user, std::span<const Building> buildings, const ChannelParams& channel)
{
  const std::vector<SectorPower> links = sector_powers(user, waps, buildings, channel);
  for (std::size_t k = 0; k < links.size(); ++k)
    if (links[k].wap_index == wap_index && links[k].sector_index == sector_index)
      return asair_db(links, k);
  throw InvalidParameter("no such WAP sector");
}

AssociationDecision associate(Point3 user, std::span<const Wap> waps,
                              std::span<const Building> buildings, const ChannelParams& channel,
                              double bias_db)
{
  const std::vector<SectorPower> links = sector_powers(user, waps, buildings, channel);
  return associate(links, bias_db);
}

} // namespace hetsim
