#pragma once

#include <optional>
#include <variant>

// 3D antenna gain as the sum of a normalized horizontal pattern, a normalized
// vertical pattern with electrical downtilt, and the maximum gain:
//
//   G(phi, theta, tilt) [dBi] = G_h(phi) + G_v(theta, tilt) + G_m
//
// All angles at this interface are in degrees. `theta` is the elevation of the
// receiver *below* the horizontal as seen from the antenna (positive when the
// antenna is above the receiver), so a downtilt of `tilt` points the main beam
// at theta == tilt.

namespace hetsim {

/// Sectorized macro antenna: parabolic horizontal and vertical lobes.
struct Sector3gpp
{
  double horiz_hpbw_deg = 65.0;
  double fbr_db = 25.0;        ///< front-to-back ratio, positive
  double vert_hpbw_deg = 7.0;
  double sll_db = -18.0;       ///< vertical side-lobe level, negative
  double max_gain_dbi = 18.0;

  bool operator==(const Sector3gpp&) const = default;
};

/// Horizontally omnidirectional dipole array with a |cos|^n vertical lobe.
struct Dipole
{
  double vert_hpbw_deg = 78.0;
  double exponent = 0.0;               ///< derived from vert_hpbw_deg, see dipole_exponent()
  std::optional<double> sll_db;        ///< absent for a single element
  double max_gain_dbi = 2.15;

  bool operator==(const Dipole&) const = default;
};

/// Horizontally omnidirectional antenna with a parabolic vertical lobe.
struct QuasiOmni
{
  double vert_hpbw_deg = 14.0;
  double sll_db = -16.0;
  double max_gain_dbi = 10.2;

  bool operator==(const QuasiOmni&) const = default;
};

using AntennaPattern = std::variant<Sector3gpp, Dipole, QuasiOmni>;

/// Gain floor for a dipole without a side-lobe level, standing in for -inf at the nulls.
inline constexpr double kDipoleNumericalFloorDb = -250.0;

/// Attenuation of the parabolic vertical lobe at |theta - tilt| == HPBW, in dB.
/// Chosen so the lobe is at exactly half power (-10 log10 2 dB) at HPBW/2.
double parabolic_vertical_coefficient_db();

/// Attenuation of the parabolic horizontal lobe at |phi| == HPBW (the 3GPP value of 12 dB).
inline constexpr double kHorizontalParabolicCoefficientDb = 12.0;

/// Exponent n for which |cos x|^n is at half power at x = vert_hpbw/2.
/// Throws InvalidParameter unless 0 < vert_hpbw_deg < 180.
double dipole_exponent(double vert_hpbw_deg);

Sector3gpp make_sector_3gpp(double horiz_hpbw_deg, double fbr_db, double vert_hpbw_deg,
                            double sll_db, double max_gain_dbi);
Dipole make_dipole(double vert_hpbw_deg, std::optional<double> sll_db, double max_gain_dbi);
QuasiOmni make_quasi_omni(double vert_hpbw_deg, double sll_db, double max_gain_dbi);

/// Throws InvalidParameter if the pattern violates its invariants.
void validate(const AntennaPattern& pattern);

double horizontal_gain_db(const AntennaPattern& pattern, double phi_deg);
double vertical_gain_db(const AntennaPattern& pattern, double theta_deg, double tilt_deg);
double total_gain_dbi(const AntennaPattern& pattern, double phi_deg, double theta_deg,
                      double tilt_deg);

double max_gain_dbi(const AntennaPattern& pattern);
double vertical_hpbw_deg(const AntennaPattern& pattern);
/// Vertical side-lobe floor, if the family defines one.
std::optional<double> vertical_sll_db(const AntennaPattern& pattern);
bool is_horizontally_omni(const AntennaPattern& pattern);

} // namespace hetsim
