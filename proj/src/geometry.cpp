#include "hetsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hetsim/errors.hpp"
#include "hetsim/scenario.hpp"

namespace hetsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double wrap_two_pi(double rad)
{
  double r = std::fmod(rad, kTwoPi);
  if (r < 0.0)
    r += kTwoPi;
  // fmod can return kTwoPi - ulp rounding up to kTwoPi after the add
  return r >= kTwoPi ? 0.0 : r;
}

Vec2 uniform_in_disc(const Region& region, RandomStream& rng)
{
  const double r = region.radius_m * std::sqrt(rng.uniform());
  const double a = rng.uniform(0.0, kTwoPi);
  return region.center + Vec2{r * std::cos(a), r * std::sin(a)};
}

double path_height(Point3 tx, Point3 rx, double t) { return tx.z + t * (rx.z - tx.z); }

} // namespace

std::string_view to_string(Tier tier) noexcept
{
  return tier == Tier::Macro ? "macro" : "metro";
}

double Region::area_km2() const
{
  const double r_km = radius_m / 1000.0;
  return std::numbers::pi * r_km * r_km;
}

Region make_region(Vec2 center, double radius_m)
{
  if (!(radius_m > 0.0))
    throw InvalidParameter("region radius must be > 0");
  return Region{center, radius_m};
}

void validate(const Wap& wap)
{
  if (!(wap.height_m > 0.0))
    throw InvalidParameter("WAP height must be > 0");
  const std::size_t expected = wap.tier == Tier::Macro ? 3 : 1;
  if (wap.sectors.size() != expected)
    throw InvalidParameter(std::string(to_string(wap.tier)) + " WAP must have " +
                           std::to_string(expected) + " sector(s)");
  for (const Sector& s : wap.sectors) {
    if (!(s.boresight_azimuth_rad >= 0.0 && s.boresight_azimuth_rad < kTwoPi))
      throw InvalidParameter("sector boresight azimuth must lie in [0, 2pi)");
    if (!(s.downtilt_deg >= 0.0 && s.downtilt_deg < 90.0))
      throw InvalidParameter("sector downtilt must lie in [0, 90) degrees");
    validate(s.pattern);
  }
  if (wap.tier == Tier::Metro && !is_horizontally_omni(wap.sectors.front().pattern))
    throw InvalidParameter("metro WAP needs a horizontally omnidirectional pattern");
  if (wap.tier == Tier::Macro) {
    for (std::size_t k = 1; k < 3; ++k) {
      const double step = wrap_two_pi(wap.sectors[k].boresight_azimuth_rad -
                                      wap.sectors[k - 1].boresight_azimuth_rad);
      if (std::abs(step - kTwoPi / 3.0) > 1e-9)
        throw InvalidParameter("macro sectors must be 120 degrees apart");
    }
  }
}

Vec2 Building::end_a() const
{
  const double h = 0.5 * length_m;
  return center - Vec2{h * std::cos(orientation_rad), h * std::sin(orientation_rad)};
}

Vec2 Building::end_b() const
{
  const double h = 0.5 * length_m;
  return center + Vec2{h * std::cos(orientation_rad), h * std::sin(orientation_rad)};
}

double wrap_degrees(double deg)
{
  double d = std::fmod(deg, 360.0);
  if (d > 180.0)
    d -= 360.0;
  else if (d <= -180.0)
    d += 360.0;
  return d;
}

std::vector<Vec2> sample_ppp(double density_per_km2, const Region& region, RandomStream& rng)
{
  if (!(density_per_km2 >= 0.0))
    throw InvalidParameter("PPP density must be non-negative");
  const std::uint64_t n = rng.poisson(density_per_km2 * region.area_km2());
  std::vector<Vec2> points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i)
    points.push_back(uniform_in_disc(region, rng));
  return points;
}

Network place_network(const Scenario& scenario, RandomStream& rng)
{
  const Region region = make_region({0.0, 0.0}, scenario.region_radius_km * 1000.0);
  Network net;

  const AntennaPattern macro_pattern{scenario.macro.antenna};
  for (Vec2 p : sample_ppp(scenario.macro.density_per_km2, region, rng)) {
    Wap w{Tier::Macro, p, scenario.macro.height_m, scenario.macro.tx_power_dbm, {}};
    const double first = rng.uniform(0.0, kTwoPi);
    for (int k = 0; k < 3; ++k)
      w.sectors.push_back(
          Sector{wrap_two_pi(first + k * kTwoPi / 3.0), macro_pattern, scenario.macro.downtilt_deg});
    net.waps.push_back(std::move(w));
  }

  const AntennaPattern metro_pattern = make_metro_pattern(scenario.metro.antenna);
  const double metro_power = effective_metro_tx_power_dbm(scenario);
  for (Vec2 p : sample_ppp(scenario.metro.density_per_km2, region, rng)) {
    net.waps.push_back(Wap{Tier::Metro, p, scenario.metro.height_m, metro_power,
                           {Sector{0.0, metro_pattern, scenario.metro.downtilt_deg}}});
  }

  const BuildingConfig& bc = scenario.buildings;
  const std::vector<Vec2> centers = sample_ppp(bc.density_per_km2, region, rng);
  net.buildings.reserve(centers.size());
  for (Vec2 c : centers) {
    Building b;
    b.center = c;
    b.length_m = rng.uniform(bc.length_min_m, bc.length_max_m);
    b.orientation_rad = rng.uniform(0.0, std::numbers::pi);
    b.height_m = rng.uniform(bc.height_min_m, bc.height_max_m);
    net.buildings.push_back(b);
  }
  return net;
}

LinkGeometry link_geometry(const Wap& wap, const Sector& sector, Vec2 user_xy,
                           double user_height_m)
{
  const Vec2 d = user_xy - wap.position;
  const double dh = wap.height_m - user_height_m;
  LinkGeometry g;
  g.distance_2d_m = std::max(norm(d), kMinLinkDistanceM);
  g.distance_3d_m = std::hypot(g.distance_2d_m, dh);
  g.azimuth_offset_deg =
      wrap_degrees(std::atan2(d.y, d.x) * kRadToDeg - sector.boresight_azimuth_rad * kRadToDeg);
  g.elevation_deg = std::atan(dh / g.distance_2d_m) * kRadToDeg;
  return g;
}

bool blocks_path(const Building& building, Point3 tx, Point3 rx)
{
  const Vec2 a = tx.xy;
  const Vec2 r = rx.xy - tx.xy;
  const Vec2 c = building.end_a();
  const Vec2 q = building.end_b() - c;
  const Vec2 w = c - a;
  const double h = building.height_m;

  const double denom = cross(r, q);
  if (denom != 0.0) {
    const double t = cross(w, q) / denom;
    const double s = cross(w, r) / denom;
    if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0)
      return false;
    return path_height(tx, rx, t) <= h;
  }

  const double rr = dot(r, r);
  if (rr == 0.0) {
    // Vertical path: blocked if its foot lies on the wall.
    const Vec2 ac = a - c;
    const double qq = dot(q, q);
    const double proj = dot(ac, q);
    if (cross(ac, q) != 0.0 || proj < 0.0 || proj > qq)
      return false;
    return std::min(tx.z, rx.z) <= h;
  }
  if (cross(w, r) != 0.0)
    return false;  // parallel, not collinear

  // Collinear: the overlap interval in path parameter t.
  const double t_c = dot(c - a, r) / rr;
  const double t_d = dot(c + q - a, r) / rr;
  const double lo = std::max(0.0, std::min(t_c, t_d));
  const double hi = std::min(1.0, std::max(t_c, t_d));
  if (lo > hi)
    return false;
  return std::min(path_height(tx, rx, lo), path_height(tx, rx, hi)) <= h;
}

int count_blockages(Point3 tx, Point3 rx, std::span<const Building> buildings)
{
  int k = 0;
  for (const Building& b : buildings)
    k += blocks_path(b, tx, rx) ? 1 : 0;
  return k;
}

std::vector<int> count_blockages_toward(Point3 rx, std::span<const Point3> txs,
                                        std::span<const Building> buildings)
{
  constexpr double kPi = std::numbers::pi;
  // Bearing slack; generous compared with atan2 rounding, so the candidate set
  // is always a superset of the true crossings.
  constexpr double kAngleSlack = 1e-9;
  constexpr double kNearReceiverM = 1e-6;

  std::vector<int> counts(txs.size(), 0);
  if (txs.empty() || buildings.empty())
    return counts;

  struct Bearing
  {
    double angle;
    std::uint32_t index;
  };
  std::vector<Bearing> bearings;
  bearings.reserve(txs.size());
  for (std::uint32_t i = 0; i < txs.size(); ++i) {
    const Vec2 d = txs[i].xy - rx.xy;
    bearings.push_back({std::atan2(d.y, d.x), i});
  }
  std::sort(bearings.begin(), bearings.end(),
            [](const Bearing& a, const Bearing& b) { return a.angle < b.angle; });

  auto test_range = [&](const Building& b, double lo, double hi) {
    auto it = std::lower_bound(bearings.begin(), bearings.end(), lo,
                               [](const Bearing& x, double v) { return x.angle < v; });
    for (; it != bearings.end() && it->angle <= hi; ++it)
      if (blocks_path(b, txs[it->index], rx))
        ++counts[it->index];
  };

  for (const Building& b : buildings) {
    const Vec2 ea = b.end_a() - rx.xy;
    const Vec2 eb = b.end_b() - rx.xy;
    const Vec2 q = eb - ea;
    const double qq = dot(q, q);
    const double s = qq > 0.0 ? std::clamp(-dot(ea, q) / qq, 0.0, 1.0) : 0.0;
    if (norm(ea + s * q) <= kNearReceiverM) {
      // The wall passes through the receiver: every bearing is a candidate.
      test_range(b, -kPi - 1.0, kPi + 1.0);
      continue;
    }
    const double aa = std::atan2(ea.y, ea.x);
    const double ab = std::atan2(eb.y, eb.x);
    double lo = std::min(aa, ab), hi = std::max(aa, ab);
    if (hi - lo <= kPi) {
      test_range(b, lo - kAngleSlack, hi + kAngleSlack);
    } else {
      // The extent wraps through +-pi.
      test_range(b, hi - kAngleSlack, kPi + 1.0);
      test_range(b, -kPi - 1.0, lo + kAngleSlack);
    }
  }
  return counts;
}

} // namespace hetsim
