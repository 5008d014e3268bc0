#include "hetsim/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hetsim/errors.hpp"

namespace hetsim {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

template <class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_hpbw(double hpbw_deg, const char* what)
{
  if (!(hpbw_deg > 0.0 && hpbw_deg < 180.0))
    throw InvalidParameter(std::string(what) + " must lie in (0, 180) degrees, got " +
                           std::to_string(hpbw_deg));
}

void require_sll(double sll_db, const char* what)
{
  if (!(sll_db <= 0.0))
    throw InvalidParameter(std::string(what) + " must be <= 0 dB, got " + std::to_string(sll_db));
}

void require_finite(double value, const char* what)
{
  if (!std::isfinite(value))
    throw InvalidParameter(std::string(what) + " must be finite");
}

double parabolic_vertical(double offset_deg, double hpbw_deg, double sll_db)
{
  const double x = offset_deg / hpbw_deg;
  return std::max(-parabolic_vertical_coefficient_db() * x * x, sll_db);
}

double dipole_vertical(const Dipole& d, double offset_deg)
{
  const double c = std::abs(std::cos(offset_deg * kDegToRad));
  const double floor_db = d.sll_db.value_or(kDipoleNumericalFloorDb);
  if (c == 0.0)
    return floor_db;
  return std::max(10.0 * d.exponent * std::log10(c), floor_db);
}

} // namespace

double parabolic_vertical_coefficient_db()
{
  static const double coefficient = 40.0 * std::log10(2.0);
  return coefficient;
}

double dipole_exponent(double vert_hpbw_deg)
{
  require_hpbw(vert_hpbw_deg, "dipole vertical HPBW");
  return std::numbers::ln2 / -std::log(std::cos(0.5 * vert_hpbw_deg * kDegToRad));
}

Sector3gpp make_sector_3gpp(double horiz_hpbw_deg, double fbr_db, double vert_hpbw_deg,
                            double sll_db, double max_gain_dbi)
{
  Sector3gpp p{horiz_hpbw_deg, fbr_db, vert_hpbw_deg, sll_db, max_gain_dbi};
  validate(p);
  return p;
}

Dipole make_dipole(double vert_hpbw_deg, std::optional<double> sll_db, double max_gain_dbi)
{
  Dipole d{vert_hpbw_deg, dipole_exponent(vert_hpbw_deg), sll_db, max_gain_dbi};
  validate(d);
  return d;
}

QuasiOmni make_quasi_omni(double vert_hpbw_deg, double sll_db, double max_gain_dbi)
{
  QuasiOmni q{vert_hpbw_deg, sll_db, max_gain_dbi};
  validate(q);
  return q;
}

void validate(const AntennaPattern& pattern)
{
  std::visit(Overloaded{
                 [](const Sector3gpp& p) {
                   require_hpbw(p.horiz_hpbw_deg, "horizontal HPBW");
                   require_hpbw(p.vert_hpbw_deg, "vertical HPBW");
                   if (!(p.fbr_db >= 0.0))
                     throw InvalidParameter("front-to-back ratio must be >= 0 dB");
                   require_sll(p.sll_db, "vertical SLL");
                   require_finite(p.max_gain_dbi, "maximum gain");
                 },
                 [](const Dipole& d) {
                   require_hpbw(d.vert_hpbw_deg, "dipole vertical HPBW");
                   if (!(d.exponent > 0.0) || !std::isfinite(d.exponent))
                     throw InvalidParameter("dipole exponent must be positive");
                   const double expected = dipole_exponent(d.vert_hpbw_deg);
                   if (std::abs(d.exponent - expected) > 1e-9 * expected)
                     throw InvalidParameter("dipole exponent is inconsistent with its HPBW");
                   if (d.sll_db)
                     require_sll(*d.sll_db, "dipole vertical SLL");
                   require_finite(d.max_gain_dbi, "maximum gain");
                 },
                 [](const QuasiOmni& q) {
                   require_hpbw(q.vert_hpbw_deg, "quasi-omni vertical HPBW");
                   require_sll(q.sll_db, "quasi-omni vertical SLL");
                   require_finite(q.max_gain_dbi, "maximum gain");
                 },
             },
             pattern);
}

double horizontal_gain_db(const AntennaPattern& pattern, double phi_deg)
{
  if (const auto* s = std::get_if<Sector3gpp>(&pattern)) {
    const double x = phi_deg / s->horiz_hpbw_deg;
    return -std::min(kHorizontalParabolicCoefficientDb * x * x, s->fbr_db);
  }
  return 0.0;
}

double vertical_gain_db(const AntennaPattern& pattern, double theta_deg, double tilt_deg)
{
  const double offset = theta_deg - tilt_deg;
  return std::visit(Overloaded{
                        [offset](const Sector3gpp& s) {
                          return parabolic_vertical(offset, s.vert_hpbw_deg, s.sll_db);
                        },
                        [offset](const Dipole& d) { return dipole_vertical(d, offset); },
                        [offset](const QuasiOmni& q) {
                          return parabolic_vertical(offset, q.vert_hpbw_deg, q.sll_db);
                        },
                    },
                    pattern);
}

double total_gain_dbi(const AntennaPattern& pattern, double phi_deg, double theta_deg,
                      double tilt_deg)
{
  return horizontal_gain_db(pattern, phi_deg) + vertical_gain_db(pattern, theta_deg, tilt_deg) +
         max_gain_dbi(pattern);
}

double max_gain_dbi(const AntennaPattern& pattern)
{
  return std::visit([](const auto& p) { return p.max_gain_dbi; }, pattern);
}

double vertical_hpbw_deg(const AntennaPattern& pattern)
{
  return std::visit([](const auto& p) { return p.vert_hpbw_deg; }, pattern);
}

std::optional<double> vertical_sll_db(const AntennaPattern& pattern)
{
  return std::visit(Overloaded{
                        [](const Sector3gpp& s) -> std::optional<double> { return s.sll_db; },
                        [](const Dipole& d) { return d.sll_db; },
                        [](const QuasiOmni& q) -> std::optional<double> { return q.sll_db; },
                    },
                    pattern);
}

bool is_horizontally_omni(const AntennaPattern& pattern)
{
  return !std::holds_alternative<Sector3gpp>(pattern);
}

} // namespace hetsim
