#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hetsim/channel.hpp"
#include "hetsim/geometry.hpp"

// Biased ASAIR association:
//   1. the macro sector with the highest mean received power, ASAIR rho1;
//   2. the metro cell with the highest mean received power, ASAIR rho2;
//   3. metro if rho2 >= rho1 - bias (dB), otherwise macro.
// ASAIR = mean desired power / sum of mean powers of every other sector,
// including the other sectors of the candidate's own macro BS.

namespace hetsim {

struct AssociationDecision
{
  Tier tier = Tier::Macro;
  std::size_t wap_index = 0;     ///< index into the WAP list
  std::size_t sector_index = 0;  ///< 0 for metro cells
  double serving_asair_db = 0.0;

  bool operator==(const AssociationDecision&) const = default;
};

/// Fading-averaged power of one sector at the user.
struct SectorPower
{
  Tier tier = Tier::Macro;
  std::size_t wap_index = 0;
  std::size_t sector_index = 0;
  double mean_power_mw = 0.0;
};

/// ASAIR of links[candidate] against every other entry. Throws DegenerateScenario
/// when there is no other entry.
double asair_db(std::span<const SectorPower> links, std::size_t candidate);

/// Steps 1-3 over precomputed mean powers. Ties in steps 1-2 go to the earliest
/// entry. With one tier absent, the best sector of the other tier is chosen
/// without the bias test. Throws DegenerateScenario for an empty list.
AssociationDecision associate(std::span<const SectorPower> links, double bias_db);

/// Mean power of every sector of every WAP, in WAP then sector order.
std::vector<SectorPower> sector_powers(Point3 user, std::span<const Wap> waps,
                                       std::span<const Building> buildings,
                                       const ChannelParams& channel);

double asair_db(std::size_t wap_index, std::size_t sector_index, std::span<const Wap> waps,
                Point3 user, std::span<const Building> buildings, const ChannelParams& channel);

AssociationDecision associate(Point3 user, std::span<const Wap> waps,
                              std::span<const Building> buildings, const ChannelParams& channel,
                              double bias_db);

} // namespace hetsim
