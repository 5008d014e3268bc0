#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hetsim/errors.hpp"
#include "hetsim/report.hpp"

using namespace hetsim;

namespace {

std::vector<std::string> lines_of(const std::string& text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

std::vector<SweepRow> small_sweep()
{
  Scenario s;
  s.region_radius_km = 1.0;
  s.drops = 40;
  const std::vector<double> tilts{0.0, 10.0, 20.0};
  const std::vector<MetroAntenna> patterns{MetroAntenna::Dipole1, MetroAntenna::QuasiOmni};
  return run_sweep(s, tilts, patterns, PowerMode::SameEirp, 1);
}

} // namespace

TEST_CASE("shortest round-trip number formatting")
{
  CHECK(format_number(33.0) == "33");
  CHECK(format_number(24.95) == "24.95");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-40.0) == "-40");
  for (double v : {1145.9083180471996, 1.0 / 3.0, 6.02e-7})
    CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("sweep CSV layout")
{
  const auto rows = small_sweep();
  const auto lines = lines_of(format_sweep(rows, OutputFormat::Csv));
  REQUIRE(lines.size() == rows.size() + 1);
  CHECK(lines[0] == kSweepCsvHeader);
  CHECK(lines[1].rfind("dipole1,0,same_eirp,33,", 0) == 0);
  CHECK(lines[2].rfind("quasi_omni,0,same_eirp,24.95,", 0) == 0);
  // unbounded radius at 0 deg is an empty field; 20 deg is bounded
  CHECK(lines[2].find(",,40,") != std::string::npos);
  CHECK(lines[4].find(",,40,") == std::string::npos);
  for (const auto& l : lines)
    CHECK(std::count(l.begin(), l.end(), ',') == 11);
}

TEST_CASE("JSON lines carry the aggregate invariants")
{
  const auto rows = small_sweep();
  const auto lines = lines_of(format_sweep(rows, OutputFormat::JsonLines));
  REQUIRE(lines.size() == rows.size());
  for (const auto& l : lines) {
    const auto j = nlohmann::json::parse(l);
    const double r1 = j["r1_bps_hz"], r2 = j["r2_bps_hz"], f = j["metro_fraction"];
    const double l1 = j["macro_density_per_km2"], l2 = j["metro_density_per_km2"];
    CHECK(double(j["ase_bps_hz_km2"]) == doctest::Approx(3.0 * l1 * r1 + l2 * r2));
    CHECK(double(j["avg_rate_bps_hz"]) == doctest::Approx(r1 * (1.0 - f) + r2 * f));
    CHECK((f >= 0.0 && f <= 1.0));
    CHECK(int(j["macro_drops"]) + int(j["metro_drops"]) == int(j["drops"]));
  }
  CHECK(nlohmann::json::parse(lines[0])["cell_radius_m"].is_null());
}

TEST_CASE("radius table")
{
  const Scenario s;
  const std::vector<MetroAntenna> p{MetroAntenna::Dipole4, MetroAntenna::QuasiOmni};
  const std::vector<double> t{0.0, 10.0};
  const auto rows = radius_table(s, p, t);
  REQUIRE(rows.size() == 4);
  CHECK_FALSE(rows[0].radius_m.has_value());
  CHECK(std::abs(*rows[1].radius_m - 1145.9) < 0.1);
  CHECK(std::abs(*rows[3].radius_m - 95.4) < 0.1);
  const auto lines = lines_of(format_radius(rows, OutputFormat::Csv));
  CHECK(lines[0] == kRadiusCsvHeader);
  CHECK(lines[1] == "dipole4,0,19.5,5,,");
  CHECK(lines[2].substr(lines[2].rfind(',') + 1) == "1145.9");
}

TEST_CASE("writing results")
{
  const auto path = std::filesystem::temp_directory_path() / "hetsim_report_test.csv";
  emit_results(path, "a,b\n1,2\n");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "a,b\n1,2\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit_results("/nonexistent/dir/out.csv", "x"), IoError);
}
