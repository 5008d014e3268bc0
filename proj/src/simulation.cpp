#include "hetsim/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "hetsim/errors.hpp"

namespace hetsim {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct TierStats
{
  std::uint64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 when n < 2
};

template <class Pred>
TierStats stats_of(std::span<const DropResult> results, Pred keep)
{
  TierStats s;
  double sum = 0.0;
  for (const DropResult& r : results)
    if (keep(r)) {
      ++s.n;
      sum += r.spectral_efficiency;
    }
  if (s.n == 0)
    return s;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n < 2)
    return s;
  double ss = 0.0;
  for (const DropResult& r : results)
    if (keep(r)) {
      const double d = r.spectral_efficiency - s.mean;
      ss += d * d;
    }
  s.variance = ss / static_cast<double>(s.n - 1);
  return s;
}

// Mean powers of the macro links are fixed for a drop; metro links are
// recomputed for each metro setting.
class DropEvaluator
{
public:
  DropEvaluator(const DropRealization& drop, const Scenario& scenario)
    : drop_(drop), bias_db_(scenario.bias_db)
  {
    const ChannelParams channel = scenario.channel();
    powers_.reserve(drop.links.size());
    loss_db_.reserve(drop.links.size());
    for (const LinkSample& l : drop.links) {
      const double loss =
          path_loss_db(channel.path_loss_for(l.tier), l.geometry.distance_3d_m / 1000.0);
      // stored as (shadow - path loss) so composing adds it
      loss_db_.push_back(shadow_db(l.blockages, channel.building_attenuation_db) - loss);
      SectorPower p{l.tier, l.wap_index, l.sector_index, 0.0};
      if (l.tier == Tier::Macro) {
        const Wap& w = drop.network.waps[l.wap_index];
        const Sector& s = w.sectors[l.sector_index];
        const double gain = total_gain_dbi(s.pattern, l.geometry.azimuth_offset_deg,
                                           l.geometry.elevation_deg, s.downtilt_deg);
        p.mean_power_mw = link_power_mw(loss_db_.back(), w.tx_power_dbm, gain);
      }
      powers_.push_back(p);
    }
  }

  DropResult evaluate(const MetroSetting& metro, const AntennaPattern& metro_pattern)
  {
    const auto& links = drop_.links;
    for (std::size_t k = 0; k < links.size(); ++k) {
      const LinkSample& l = links[k];
      if (l.tier != Tier::Metro)
        continue;
      const double gain = total_gain_dbi(metro_pattern, l.geometry.azimuth_offset_deg,
                                         l.geometry.elevation_deg, metro.downtilt_deg);
      powers_[k].mean_power_mw = link_power_mw(loss_db_[k], metro.tx_power_dbm, gain);
    }

    const AssociationDecision d = associate(powers_, bias_db_);
    std::size_t serving = 0;
    while (powers_[serving].wap_index != d.wap_index ||
           powers_[serving].sector_index != d.sector_index)
      ++serving;

    double interference = 0.0;
    for (std::size_t k = 0; k < links.size(); ++k)
      if (k != serving)
        interference += powers_[k].mean_power_mw * links[k].fading;
    const double sir = powers_[serving].mean_power_mw * links[serving].fading / interference;

    return DropResult{d.tier, std::log2(1.0 + sir), linear_to_db(sir), links[serving].blockages};
  }

private:
  static double link_power_mw(double net_loss_db, double tx_dbm, double gain_dbi)
  {
    return dbm_to_mw(compose_mean_rx_power_dbm(tx_dbm, gain_dbi, 0.0, net_loss_db));
  }

  const DropRealization& drop_;
  double bias_db_;
  std::vector<SectorPower> powers_;
  std::vector<double> loss_db_;
};

void check_cell(const SweepCell& cell)
{
  if (!(cell.downtilt_deg >= 0.0 && cell.downtilt_deg < 90.0))
    throw InvalidParameter("metro downtilt must lie in [0, 90) degrees");
  if (!supports_downtilt(cell.antenna) && cell.downtilt_deg != 0.0)
    throw InvalidParameter("a single-element dipole cannot be tilted (requested " +
                           std::to_string(cell.downtilt_deg) + " deg)");
}

} // namespace

NetworkMetrics aggregate(std::span<const DropResult> results, double macro_density_per_km2,
                         double metro_density_per_km2)
{
  if (results.empty())
    throw InvalidParameter("cannot aggregate an empty result list");

  const TierStats macro = stats_of(results, [](const DropResult& r) { return r.tier == Tier::Macro; });
  const TierStats metro = stats_of(results, [](const DropResult& r) { return r.tier == Tier::Metro; });
  const TierStats all = stats_of(results, [](const DropResult&) { return true; });

  NetworkMetrics m;
  m.macro_drops = macro.n;
  m.metro_drops = metro.n;
  m.macro_tier_empty = macro.n == 0;
  m.metro_tier_empty = metro.n == 0;
  m.r1 = macro.mean;
  m.r2 = metro.mean;
  m.metro_fraction = static_cast<double>(metro.n) / static_cast<double>(results.size());

  const double w1 = 3.0 * macro_density_per_km2;
  const double w2 = metro_density_per_km2;
  m.ase = w1 * m.r1 + w2 * m.r2;
  m.avg_user_rate = m.r1 * (1.0 - m.metro_fraction) + m.r2 * m.metro_fraction;

  const double var_r1 = macro.n ? macro.variance / static_cast<double>(macro.n) : 0.0;
  const double var_r2 = metro.n ? metro.variance / static_cast<double>(metro.n) : 0.0;
  m.ase_stderr = std::sqrt(w1 * w1 * var_r1 + w2 * w2 * var_r2);
  // The average user rate is the unconditional mean over all drops.
  m.rate_stderr = std::sqrt(all.variance / static_cast<double>(all.n));
  return m;
}

DropRealization realize_drop(const Scenario& scenario, std::uint64_t drop_index)
{
  for (std::uint64_t attempt = 0; attempt < kMaxDropAttempts; ++attempt) {
    RandomStream rng = RandomStream::for_drop(scenario.master_seed, drop_index, attempt);
    Network net = place_network(scenario, rng);

    std::size_t sectors = 0;
    for (const Wap& w : net.waps)
      sectors += w.sectors.size();
    if (sectors < 2)
      continue;

    DropRealization drop;
    drop.drop_index = drop_index;
    drop.attempt = attempt;
    drop.links.reserve(sectors);

    const Point3 user{{0.0, 0.0}, scenario.user_height_m};
    std::vector<Point3> tx;
    tx.reserve(net.waps.size());
    for (const Wap& wap : net.waps)
      tx.push_back(Point3{wap.position, wap.height_m});
    const std::vector<int> blockages = count_blockages_toward(user, tx, net.buildings);

    for (std::size_t w = 0; w < net.waps.size(); ++w) {
      const Wap& wap = net.waps[w];
      const int k = blockages[w];
      for (std::size_t s = 0; s < wap.sectors.size(); ++s) {
        LinkSample l;
        l.tier = wap.tier;
        l.wap_index = static_cast<std::uint32_t>(w);
        l.sector_index = static_cast<std::uint32_t>(s);
        l.geometry = link_geometry(wap, wap.sectors[s], user.xy, user.z);
        l.blockages = k;
        drop.links.push_back(l);
      }
    }
    RandomStream fading = RandomStream::for_drop(scenario.master_seed, drop_index, attempt,
                                                 DropStream::Fading);
    for (LinkSample& l : drop.links)
      l.fading = draw_fading(fading);
    drop.network = std::move(net);
    return drop;
  }
  throw DegenerateScenario("drop " + std::to_string(drop_index) + ": fewer than two sectors in " +
                           std::to_string(kMaxDropAttempts) + " placements");
}

MetroSetting metro_setting(const Scenario& scenario)
{
  return MetroSetting{scenario.metro.antenna, scenario.metro.downtilt_deg,
                      effective_metro_tx_power_dbm(scenario)};
}

DropResult evaluate_drop(const DropRealization& drop, const Scenario& scenario,
                         const MetroSetting& metro)
{
  DropEvaluator eval(drop, scenario);
  return eval.evaluate(metro, make_metro_pattern(metro.antenna));
}

DropResult run_drop(const Scenario& scenario, std::uint64_t drop_index)
{
  validate(scenario);
  return evaluate_drop(realize_drop(scenario, drop_index), scenario, metro_setting(scenario));
}

std::optional<double> cell_radius(double height_m, double user_height_m, double downtilt_deg,
                                  double vert_hpbw_deg)
{
  if (!(height_m > user_height_m))
    throw InvalidParameter("antenna height must exceed user height");
  if (!(downtilt_deg >= 0.0 && downtilt_deg < 90.0))
    throw InvalidParameter("downtilt must lie in [0, 90) degrees");
  if (!(vert_hpbw_deg > 0.0 && vert_hpbw_deg < 180.0))
    throw InvalidParameter("vertical HPBW must lie in (0, 180) degrees");
  const double edge = downtilt_deg - 0.5 * vert_hpbw_deg;
  if (edge <= 0.0)
    return std::nullopt;
  return (height_m - user_height_m) / std::tan(edge * kDegToRad);
}

double cell_tx_power_dbm(const Scenario& scenario, const SweepCell& cell)
{
  return cell.power_mode == PowerMode::SameEirp ? same_eirp_tx_power_dbm(cell.antenna)
                                                : scenario.metro.tx_power_dbm;
}

std::vector<SweepRow> run_cells(const Scenario& scenario, std::span<const SweepCell> cells,
                                unsigned workers)
{
  validate(scenario);
  for (const SweepCell& c : cells)
    check_cell(c);
  if (cells.empty())
    return {};

  std::vector<MetroSetting> settings;
  std::vector<AntennaPattern> patterns;
  for (const SweepCell& c : cells) {
    settings.push_back(MetroSetting{c.antenna, c.downtilt_deg, cell_tx_power_dbm(scenario, c)});
    patterns.push_back(make_metro_pattern(c.antenna));
  }

  const std::uint64_t drops = scenario.drops;
  std::vector<std::vector<DropResult>> results(cells.size(), std::vector<DropResult>(drops));

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    try {
      for (std::uint64_t d = next++; d < drops && !failed; d = next++) {
        const DropRealization drop = realize_drop(scenario, d);
        DropEvaluator eval(drop, scenario);
        for (std::size_t c = 0; c < cells.size(); ++c)
          results[c][d] = eval.evaluate(settings[c], patterns[c]);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error)
        error = std::current_exception();
      failed = true;
    }
  };

  const unsigned n_threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(std::max(workers, 1u), 1, drops));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t)
    pool.emplace_back(work);
  work();
  for (std::thread& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);

  std::vector<SweepRow> rows;
  rows.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    SweepRow row;
    row.cell = cells[c];
    row.metro_tx_power_dbm = settings[c].tx_power_dbm;
    row.metrics = aggregate(results[c], scenario.macro.density_per_km2,
                            scenario.metro.density_per_km2);
    row.cell_radius_m = cell_radius(scenario.metro.height_m, scenario.user_height_m,
                                    cells[c].downtilt_deg, vertical_hpbw_deg(patterns[c]));
    row.macro_density_per_km2 = scenario.macro.density_per_km2;
    row.metro_density_per_km2 = scenario.metro.density_per_km2;
    row.drops = drops;
    row.seed = scenario.master_seed;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, std::span<const double> tilts,
                                std::span<const MetroAntenna> patterns, PowerMode mode,
                                unsigned workers)
{
  const bool has_zero = std::find(tilts.begin(), tilts.end(), 0.0) != tilts.end();
  std::vector<SweepCell> cells;
  for (MetroAntenna a : patterns) {
    if (!supports_downtilt(a) && !tilts.empty() && !has_zero)
      throw InvalidParameter("dipole1 requested in a sweep without a 0 degree tilt");
    for (double t : tilts) {
      if (!supports_downtilt(a) && t != 0.0)
        continue;
      cells.push_back(SweepCell{a, t, mode});
    }
  }
  return run_cells(scenario, cells, workers);
}

SweepRow simulate(const Scenario& scenario, unsigned workers)
{
  const SweepCell cell{scenario.metro.antenna, scenario.metro.downtilt_deg, scenario.power_mode};
  return run_cells(scenario, std::span(&cell, 1), workers).front();
}

} // namespace hetsim
