// Acceptance run: one PASS/FAIL line per criterion. Soft targets that the
// model is not expected to hit exactly are reported on "note" lines and do not
// affect the exit status.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include "hetsim/antenna.hpp"
#include "hetsim/association.hpp"
#include "hetsim/errors.hpp"
#include "hetsim/geometry.hpp"
#include "hetsim/scenario.hpp"
#include "hetsim/simulation.hpp"
#include "oracles.hpp"

using namespace hetsim;

namespace {

// Tolerances
constexpr double kRadiusTolM = 0.1;
constexpr double kRadiusRuntimeS = 1.0;
constexpr double kExponentTol = 0.01;
constexpr double kHalfPowerTolDb = 1e-6;
constexpr double kFloorGridDeg = 0.1;
constexpr int kBlockageScenes = 1000;
constexpr double kMarchStepM = 0.01;
constexpr double kBlockageRuntimeS = 60.0;
constexpr int kAssociationScenes = 50;
constexpr int kMaxDeskWaps = 10;
constexpr std::uint64_t kDeterminismDrops = 1000;
constexpr std::uint64_t kSweepDrops = 10000;
constexpr double kTrendSigmas = 2.0;
constexpr double kOrderingSigmas = 2.0;
constexpr double kZeroTiltSigmas = 1.0;
constexpr double kFractionSoftTolPp = 5.0;
constexpr double kPowerGapDb = 8.05;
constexpr double kPowerGapTolDb = 1e-9;
constexpr int kPairedBatches = 50;

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail)
{
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  failures += pass ? 0 : 1;
}

void note(const std::string& text)
{
  std::printf("  note: %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::pair<int, std::string> run_cli(const std::string& args)
{
  const std::string cmd = std::string(HETSIM_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');)
      cells.push_back(c);
    if (!line.empty() && line.back() == ',')
      cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

// ---------------------------------------------------------------------------

void cell_radius_tables()
{
  const std::map<std::string, std::array<double, 4>> expected{
      {"dipole4", {1145.9, 27.7, 13.6, 8.6}}, {"quasi_omni", {95.4, 21.7, 11.8, 7.7}}};
  const auto t0 = std::chrono::steady_clock::now();
  const auto [code, out] =
      run_cli("radius --set radius.patterns=dipole4,quasi_omni --set radius.tilts_deg=10,20,30,40");
  const double elapsed = seconds_since(t0);
  bool ok = code == 0;
  double worst = 0.0;
  int matched = 0;
  const std::array<double, 4> tilts{10.0, 20.0, 30.0, 40.0};
  for (const auto& row : csv_rows(out)) {
    if (row.size() < 5 || row[4].empty() || !expected.count(row[0]))
      continue;
    const double tilt = std::stod(row[1]);
    const auto it = std::find(tilts.begin(), tilts.end(), tilt);
    if (it == tilts.end())
      continue;
    const double err = std::abs(std::stod(row[4]) - expected.at(row[0])[it - tilts.begin()]);
    worst = std::max(worst, err);
    ++matched;
  }
  ok = ok && matched == 8 && worst <= kRadiusTolM && elapsed < kRadiusRuntimeS;
  report(1, "cell-radius tables", ok,
         fmt("%d/8 values, max error %.4f m (tol %.1f), %.3f s", matched, worst, kRadiusTolM,
             elapsed));
}

void dipole_exponents()
{
  const std::array<std::pair<double, double>, 3> cases{{{78.0, 2.75}, {39.0, 11.73}, {19.5, 47.64}}};
  double worst = 0.0;
  std::string values;
  for (auto [hpbw, n] : cases) {
    const double got = dipole_exponent(hpbw);
    worst = std::max(worst, std::abs(got - n));
    values += fmt("%s%.4f", values.empty() ? "" : ", ", got);
  }
  report(2, "dipole exponents", worst <= kExponentTol,
         fmt("n = %s, max error %.4f (tol %.2f)", values.c_str(), worst, kExponentTol));
}

void half_power()
{
  const double half = -10.0 * std::log10(2.0);
  std::vector<std::pair<std::string, AntennaPattern>> families{{"sector", Sector3gpp{}}};
  for (auto a : kAllMetroAntennas)
    families.emplace_back(std::string(to_string(a)), make_metro_pattern(a));

  double worst = 0.0;
  long floor_violations = 0, samples = 0;
  for (const auto& [name, p] : families) {
    const double hpbw = vertical_hpbw_deg(p);
    const auto sll = vertical_sll_db(p);
    const double floor = sll ? *sll : kDipoleNumericalFloorDb;
    for (double tilt : {0.0, 8.0, 16.0}) {
      for (double side : {-1.0, 1.0})
        worst = std::max(worst, std::abs(vertical_gain_db(p, tilt + side * hpbw / 2.0, tilt) - half));
      for (int i = -900; i <= 900; ++i) {
        const double theta = i * kFloorGridDeg;
        const double g = vertical_gain_db(p, theta, tilt);
        ++samples;
        if (!(g >= floor && g <= 0.0))
          ++floor_violations;
      }
    }
    if (!is_horizontally_omni(p)) {
      const double fbr = std::get<Sector3gpp>(p).fbr_db;
      for (int i = -1800; i <= 1800; ++i) {
        const double g = horizontal_gain_db(p, i * kFloorGridDeg);
        ++samples;
        if (!(g >= -fbr && g <= 0.0))
          ++floor_violations;
      }
    }
  }
  report(3, "half-power property", worst <= kHalfPowerTolDb && floor_violations == 0,
         fmt("max |G - (-3.0103)| = %.2e dB (tol %.0e) over 5 families x 3 tilts; "
             "%ld floor violations in %ld grid samples",
             worst, kHalfPowerTolDb, floor_violations, samples));
}

void blockage_oracle()
{
  RandomStream rng(0xB10C);
  const auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0, fast_mismatches = 0, ambiguous = 0, blocked_links = 0;
  for (int scene = 0; scene < kBlockageScenes; ++scene) {
    const Point3 tx{{rng.uniform(-150.0, 150.0), rng.uniform(-150.0, 150.0)}, rng.uniform(3.0, 40.0)};
    const Point3 rx{{rng.uniform(-150.0, 150.0), rng.uniform(-150.0, 150.0)}, rng.uniform(0.0, 2.0)};
    std::vector<Building> walls;
    const int n = 10 + static_cast<int>(rng.uniform(0.0, 20.0));
    for (int i = 0; i < n; ++i)
      walls.push_back({{rng.uniform(-160.0, 160.0), rng.uniform(-160.0, 160.0)},
                       rng.uniform(20.0, 30.0), rng.uniform(0.0, kPi), rng.uniform(10.0, 20.0)});
    if (scene % 10 == 0) {
      // a wall ending exactly on the path
      const double t = rng.uniform(0.2, 0.8);
      const Vec2 on = tx.xy + t * (rx.xy - tx.xy);
      const double o = rng.uniform(0.0, kPi);
      const double len = 24.0;
      walls.push_back({on + Vec2{0.5 * len * std::cos(o), 0.5 * len * std::sin(o)}, len, o, 50.0});
    }
    const int got = count_blockages(tx, rx, walls);
    const auto oracle = oracle::march_blockages(tx, rx, walls, kMarchStepM);
    const Point3 txs[] = {tx};
    const int fast = count_blockages_toward(rx, txs, walls).front();
    mismatches += got != oracle.count ? 1 : 0;
    fast_mismatches += fast != oracle.count ? 1 : 0;
    ambiguous += oracle.ambiguous;
    blocked_links += got > 0 ? 1 : 0;
  }
  const double elapsed = seconds_since(t0);
  report(4, "blockage oracle", mismatches == 0 && fast_mismatches == 0 && elapsed < kBlockageRuntimeS,
         fmt("%d/%d scenes mismatched (radial index: %d), %d blocked links, %d tie cases resolved "
             "analytically, %.1f s",
             mismatches, kBlockageScenes, fast_mismatches, blocked_links, ambiguous, elapsed));
}

void association_oracle()
{
  RandomStream rng(0xA550C);
  const ChannelParams channel;
  const Point3 user{{0.0, 0.0}, 0.0};
  int mismatches = 0, metro_picks = 0, scenes = 0;
  while (scenes < kAssociationScenes) {
    const int n_macro = static_cast<int>(rng.uniform(0.0, 4.0));
    const int n_metro = static_cast<int>(rng.uniform(0.0, kMaxDeskWaps - n_macro + 1.0));
    if (n_macro * 3 + n_metro < 2)
      continue;
    std::vector<Wap> waps;
    for (int i = 0; i < n_macro; ++i) {
      Wap w{Tier::Macro, {rng.uniform(-750.0, 750.0), rng.uniform(-750.0, 750.0)}, 30.0, 46.0, {}};
      const double first = rng.uniform(0.0, 2.0 * kPi / 3.0);
      for (int k = 0; k < 3; ++k)
        w.sectors.push_back(Sector{first + k * 2.0 * kPi / 3.0, Sector3gpp{}, 10.0});
      waps.push_back(w);
    }
    for (int i = 0; i < n_metro; ++i) {
      const auto a = kAllMetroAntennas[static_cast<std::size_t>(rng.uniform(0.0, 4.0))];
      const double tilt = supports_downtilt(a) ? 2.0 * std::floor(rng.uniform(0.0, 21.0)) : 0.0;
      waps.push_back(Wap{Tier::Metro, {rng.uniform(-250.0, 250.0), rng.uniform(-250.0, 250.0)}, 5.0,
                         33.0, {Sector{0.0, make_metro_pattern(a), tilt}}});
    }
    std::vector<Building> walls;
    for (int i = 0; i < 20; ++i)
      walls.push_back({{rng.uniform(-250.0, 250.0), rng.uniform(-250.0, 250.0)},
                       rng.uniform(20.0, 30.0), rng.uniform(0.0, kPi), rng.uniform(10.0, 20.0)});
    const double bias = 6.0;
    const auto want = oracle::brute_force_associate(user, waps, walls, channel, bias);
    const auto got = associate(user, waps, walls, channel, bias);
    if (!want || got.tier != want->tier || got.wap_index != want->wap_index ||
        got.sector_index != want->sector_index)
      ++mismatches;
    metro_picks += got.tier == Tier::Metro ? 1 : 0;
    ++scenes;
  }
  report(5, "association oracle", mismatches == 0,
         fmt("%d/%d scenes mismatched (%d metro-served, <= %d WAPs each)", mismatches, scenes,
             metro_picks, kMaxDeskWaps));
}

void determinism()
{
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "hetsim_accept_w1.csv", b = dir / "hetsim_accept_w8.csv";
  const std::string args = fmt("simulate --seed 20240607 --set simulation.drops=%llu "
                               "--set metro.downtilt_deg=16 --out ",
                               static_cast<unsigned long long>(kDeterminismDrops));
  const int c1 = run_cli(args + a.string() + " --workers 1").first;
  const int c8 = run_cli(args + b.string() + " --workers 8").first;
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string sa = slurp(a), sb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  report(6, "determinism", c1 == 0 && c8 == 0 && !sa.empty() && sa == sb,
         fmt("%llu drops, 1 vs 8 workers: %zu vs %zu bytes, %s",
             static_cast<unsigned long long>(kDeterminismDrops), sa.size(), sb.size(),
             sa == sb ? "identical" : "DIFFERENT"));
}

// ---------------------------------------------------------------------------
// Criteria 7-10 share one common-random-numbers run over every cell.

struct Grid
{
  std::map<std::tuple<PowerMode, MetroAntenna, double>, SweepRow> rows;
  const SweepRow& at(PowerMode m, MetroAntenna a, double tilt) const
  {
    return rows.at({m, a, tilt});
  }
};

double combined_se(const SweepRow& a, const SweepRow& b)
{
  return std::hypot(a.metrics.ase_stderr, b.metrics.ase_stderr);
}

std::vector<double> swept_tilts()
{
  std::vector<double> t;
  for (int k = 0; k <= 20; ++k)
    t.push_back(2.0 * k);
  return t;
}

double best_tilt(const Grid& g, PowerMode m, MetroAntenna a)
{
  if (!supports_downtilt(a))
    return 0.0;
  double best = 0.0;
  for (double t : swept_tilts())
    if (g.at(m, a, t).metrics.ase > g.at(m, a, best).metrics.ase)
      best = t;
  return best;
}

Grid run_grid()
{
  Scenario s;
  s.drops = kSweepDrops;
  std::vector<SweepCell> cells;
  for (PowerMode m : {PowerMode::SamePower, PowerMode::SameEirp})
    for (MetroAntenna a : kAllMetroAntennas)
      for (double t : swept_tilts())
        if (supports_downtilt(a) || t == 0.0)
          cells.push_back({a, t, m});
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_cells(s, cells, workers);
  std::printf("  (sweep: %zu cells x %llu drops, %u worker(s), %.1f s)\n", cells.size(),
              static_cast<unsigned long long>(kSweepDrops), workers, seconds_since(t0));
  Grid g;
  for (const auto& r : rows)
    g.rows.emplace(std::tuple{r.cell.power_mode, r.cell.antenna, r.cell.downtilt_deg}, r);
  return g;
}

// Diagnostic only: standard error of an ASE difference from batch means over
// the shared drops, which accounts for the positive correlation that common
// random numbers induce between cells.
double paired_batch_se(const SweepRow& hi, const SweepRow& lo)
{
  Scenario s;
  const std::uint64_t per_batch = kSweepDrops / kPairedBatches;
  const MetroSetting sh{hi.cell.antenna, hi.cell.downtilt_deg, hi.metro_tx_power_dbm};
  const MetroSetting sl{lo.cell.antenna, lo.cell.downtilt_deg, lo.metro_tx_power_dbm};
  std::vector<double> diffs;
  for (int b = 0; b < kPairedBatches; ++b) {
    std::vector<DropResult> rh, rl;
    for (std::uint64_t d = b * per_batch; d < (b + 1) * per_batch; ++d) {
      const DropRealization drop = realize_drop(s, d);
      rh.push_back(evaluate_drop(drop, s, sh));
      rl.push_back(evaluate_drop(drop, s, sl));
    }
    diffs.push_back(aggregate(rh, s.macro.density_per_km2, s.metro.density_per_km2).ase -
                    aggregate(rl, s.macro.density_per_km2, s.metro.density_per_km2).ase);
  }
  double mean = 0.0;
  for (double x : diffs)
    mean += x / diffs.size();
  double ss = 0.0;
  for (double x : diffs)
    ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (diffs.size() - 1) / diffs.size());
}

void unimodality(const Grid& g)
{
  const auto m = PowerMode::SamePower;
  const auto q = MetroAntenna::QuasiOmni;
  const double tb = best_tilt(g, m, q);
  const auto& best = g.at(m, q, tb);
  const auto& zero = g.at(m, q, 0.0);
  const auto& forty = g.at(m, q, 40.0);
  const double z0 = (best.metrics.ase - zero.metrics.ase) / combined_se(best, zero);
  const double z40 = (best.metrics.ase - forty.metrics.ase) / combined_se(best, forty);
  report(7, "downtilt unimodality", z0 > kTrendSigmas && z40 > kTrendSigmas,
         fmt("quasi-omni ASE %.2f at 0 deg, %.2f at best tilt %.0f deg, %.2f at 40 deg; "
             "margins %.1f and %.1f combined SE (need > %.0f)",
             zero.metrics.ase, best.metrics.ase, tb, forty.metrics.ase, z0, z40, kTrendSigmas));
}

void metro_fraction(const Grid& g)
{
  const std::array<double, 4> tilts{10.0, 20.0, 30.0, 40.0};
  const std::map<MetroAntenna, std::array<double, 4>> reference{
      {MetroAntenna::Dipole4, {34.1, 21.7, 14.9, 14.4}},
      {MetroAntenna::QuasiOmni, {44.7, 22.1, 18.0, 17.6}}};
  bool monotone = true;
  std::string detail;
  for (const auto& [a, ref] : reference) {
    std::string vals;
    for (std::size_t i = 0; i < tilts.size(); ++i) {
      const double f = 100.0 * g.at(PowerMode::SamePower, a, tilts[i]).metrics.metro_fraction;
      if (i > 0 &&
          f > 100.0 * g.at(PowerMode::SamePower, a, tilts[i - 1]).metrics.metro_fraction)
        monotone = false;
      vals += fmt("%s%.1f", vals.empty() ? "" : "/", f);
      if (std::abs(f - ref[i]) > kFractionSoftTolPp)
        note(fmt("%s at %.0f deg: metro fraction %.1f%% vs reference %.1f%% (soft, +-%.0f pp)",
                 std::string(to_string(a)).c_str(), tilts[i], f, ref[i], kFractionSoftTolPp));
    }
    detail += fmt("%s%s %s%%", detail.empty() ? "" : "; ", std::string(to_string(a)).c_str(),
                  vals.c_str());
  }
  report(8, "metro fraction vs tilt", monotone,
         detail + " at 10/20/30/40 deg, non-increasing: " + (monotone ? "yes" : "no"));
}

void headline_gains(const Grid& g)
{
  struct Range
  {
    double ase_lo, ase_hi, rate_lo, rate_hi;
  };
  const std::map<PowerMode, Range> ranges{{PowerMode::SamePower, {25.0, 55.0, 6.0, 22.0}},
                                          {PowerMode::SameEirp, {16.0, 46.0, 5.0, 21.0}}};
  bool orderings = true;
  std::string detail;
  for (PowerMode m : {PowerMode::SamePower, PowerMode::SameEirp}) {
    const auto& base = g.at(m, MetroAntenna::Dipole1, 0.0);
    const double tq = best_tilt(g, m, MetroAntenna::QuasiOmni);
    const auto& quasi = g.at(m, MetroAntenna::QuasiOmni, tq);
    const double ase_gain = 100.0 * (quasi.metrics.ase / base.metrics.ase - 1.0);
    const double rate_gain = 100.0 * (quasi.metrics.avg_user_rate / base.metrics.avg_user_rate - 1.0);
    const Range r = ranges.at(m);
    const char* mode = m == PowerMode::SamePower ? "same_power" : "same_eirp";
    if (ase_gain < r.ase_lo || ase_gain > r.ase_hi)
      note(fmt("%s ASE gain %.1f%% outside %.0f-%.0f%% (soft)", mode, ase_gain, r.ase_lo, r.ase_hi));
    if (rate_gain < r.rate_lo || rate_gain > r.rate_hi)
      note(fmt("%s rate gain %.1f%% outside %.0f-%.0f%% (soft)", mode, rate_gain, r.rate_lo,
               r.rate_hi));

    // quasi > 4-el > 2-el > 1-el, each at its own best tilt
    const std::array<MetroAntenna, 4> order{MetroAntenna::QuasiOmni, MetroAntenna::Dipole4,
                                            MetroAntenna::Dipole2, MetroAntenna::Dipole1};
    std::string margins;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const auto& hi = g.at(m, order[i], best_tilt(g, m, order[i]));
      const auto& lo = g.at(m, order[i + 1], best_tilt(g, m, order[i + 1]));
      const double z = (hi.metrics.ase - lo.metrics.ase) / combined_se(hi, lo);
      orderings = orderings && z > kOrderingSigmas;
      if (z <= kOrderingSigmas) {
        const double diff = hi.metrics.ase - lo.metrics.ase;
        const double paired = paired_batch_se(hi, lo);
        note(fmt("%s %s (%.0f deg) vs %s (%.0f deg): ASE %.2f vs %.2f, %.2f combined SE; paired "
                 "batch-means SE %.3f gives %.1f SE (diagnostic, not the criterion)",
                 mode, std::string(to_string(order[i])).c_str(), hi.cell.downtilt_deg,
                 std::string(to_string(order[i + 1])).c_str(), lo.cell.downtilt_deg,
                 hi.metrics.ase, lo.metrics.ase, z, paired, diff / paired));
      }
      margins += fmt("%s%.1f", margins.empty() ? "" : "/", z);
    }
    detail += fmt("%s: ASE +%.1f%%, rate +%.1f%% (quasi at %.0f deg vs 1-el), ordering margins "
                  "%s SE; ",
                  mode, ase_gain, rate_gain, tq, margins.c_str());
  }
  const double gap = g.at(PowerMode::SameEirp, MetroAntenna::Dipole1, 0.0).metro_tx_power_dbm -
                     g.at(PowerMode::SameEirp, MetroAntenna::QuasiOmni, 0.0).metro_tx_power_dbm;
  const bool gap_ok = std::abs(gap - kPowerGapDb) <= kPowerGapTolDb;
  detail += fmt("same_eirp power gap %.2f dB", gap);
  report(9, "headline gains", orderings && gap_ok, detail);
}

void zero_tilt_ordering(const Grid& g)
{
  const std::array<MetroAntenna, 4> order{MetroAntenna::Dipole1, MetroAntenna::Dipole2,
                                          MetroAntenna::Dipole4, MetroAntenna::QuasiOmni};
  bool ok = true;
  std::string values, margins;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& r = g.at(PowerMode::SamePower, order[i], 0.0);
    values += fmt("%s%.2f", values.empty() ? "" : " >= ", r.metrics.ase);
    if (i + 1 < order.size()) {
      const auto& next = g.at(PowerMode::SamePower, order[i + 1], 0.0);
      const double z = (r.metrics.ase - next.metrics.ase) / combined_se(r, next);
      ok = ok && z > kZeroTiltSigmas;
      margins += fmt("%s%.2f", margins.empty() ? "" : "/", z);
    }
  }
  report(10, "zero-tilt ordering", ok,
         fmt("ASE 1-el/2-el/4-el/quasi %s, margins %s combined SE (need > %.0f)", values.c_str(),
             margins.c_str(), kZeroTiltSigmas));
}

} // namespace

int main()
{
  try {
    cell_radius_tables();
    dipole_exponents();
    half_power();
    blockage_oracle();
    association_oracle();
    determinism();
    const Grid g = run_grid();
    unimodality(g);
    metro_fraction(g);
    headline_gains(g);
    zero_tilt_ordering(g);
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%s: %d criterion/criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
