#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hetsim/antenna.hpp"
#include "hetsim/random.hpp"

// Geometry is in meters throughout (positions, heights, lengths). Densities are
// per km^2 and converted at the point of sampling.

namespace hetsim {

struct Scenario;

enum class Tier : std::uint8_t { Macro, Metro };

std::string_view to_string(Tier tier) noexcept;

struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

struct Point3
{
  Vec2 xy;
  double z = 0.0;
};

/// Disc-shaped simulation window.
struct Region
{
  Vec2 center;
  double radius_m = 5000.0;

  double area_km2() const;
  bool contains(Vec2 p) const { return norm(p - center) <= radius_m; }
};

/// Throws InvalidParameter unless radius_m > 0.
Region make_region(Vec2 center, double radius_m);

struct Sector
{
  double boresight_azimuth_rad = 0.0;  ///< [0, 2pi), counter-clockwise from +x
  AntennaPattern pattern;
  double downtilt_deg = 0.0;           ///< [0, 90)
};

/// Wireless access point: a 3-sector macro BS or a single-sector metro cell.
struct Wap
{
  Tier tier = Tier::Macro;
  Vec2 position;
  double height_m = 0.0;
  double tx_power_dbm = 0.0;
  std::vector<Sector> sectors;
};

/// Throws InvalidParameter if the WAP breaks the per-tier sector layout.
void validate(const Wap& wap);

/// A building reduced to a vertical wall: a footprint segment of `length_m`
/// centered at `center` along `orientation_rad`, with a height.
struct Building
{
  Vec2 center;
  double length_m = 0.0;
  double orientation_rad = 0.0;  ///< [0, pi)
  double height_m = 0.0;

  Vec2 end_a() const;
  Vec2 end_b() const;
};

struct LinkGeometry
{
  double distance_2d_m = 0.0;     ///< after the minimum-distance clamp
  double distance_3d_m = 0.0;
  double azimuth_offset_deg = 0.0;  ///< (-180, 180], relative to sector boresight
  double elevation_deg = 0.0;       ///< below horizontal; > 0 when the transmitter is higher
};

/// 2D separations below this are clamped before angles and path loss are evaluated.
inline constexpr double kMinLinkDistanceM = 1.0;

/// Wraps an angle in degrees to (-180, 180].
double wrap_degrees(double deg);

/// Homogeneous PPP on `region`: Poisson count with mean density * area, then
/// independent uniform points. Throws InvalidParameter for a negative density.
std::vector<Vec2> sample_ppp(double density_per_km2, const Region& region, RandomStream& rng);

struct Network
{
  std::vector<Wap> waps;  ///< all macros first, then all metros
  std::vector<Building> buildings;
};

/// Samples macro BSs, metro cells, and buildings for one drop. The amount of
/// randomness consumed depends only on the geometry parameters of the scenario,
/// never on antenna patterns, tilts, or powers.
Network place_network(const Scenario& scenario, RandomStream& rng);

LinkGeometry link_geometry(const Wap& wap, const Sector& sector, Vec2 user_xy,
                           double user_height_m);

/// Number of buildings whose footprint intersects the footprint of the path
/// tx->rx at a point where the straight path is no higher than the building.
/// Touching an endpoint counts as crossing.
int count_blockages(Point3 tx, Point3 rx, std::span<const Building> buildings);

/// Whether a single building blocks the straight path tx->rx.
bool blocks_path(const Building& building, Point3 tx, Point3 rx);

/// Blockage counts for many transmitters toward one receiver; entry i equals
/// count_blockages(txs[i], rx, buildings). Each building is tested only against
/// transmitters whose bearing from rx falls inside the building's angular extent.
std::vector<int> count_blockages_toward(Point3 rx, std::span<const Point3> txs,
                                        std::span<const Building> buildings);

} // namespace hetsim
