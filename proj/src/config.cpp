#include "hetsim/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "hetsim/errors.hpp"

namespace hetsim {

namespace {

struct RawValue
{
  std::vector<std::string> items;  // one item for scalars
  bool is_list = false;
  int line = 0;                    // 1-based, 0 for overrides
};

using Setter = std::function<void(ExperimentConfig&, const RawValue&, const std::string& key)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct Field
{
  std::string section;
  std::string name;
  Setter set;
  Getter get;

  std::string key() const { return section + "." + name; }
};

[[noreturn]] void fail(const std::string& key, int line, const std::string& what)
{
  std::string msg = key.empty() ? what : key + ": " + what;
  if (line > 0)
    msg = "line " + std::to_string(line) + ": " + msg;
  throw ConfigError(key, line, msg);
}

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string format_double(double v)
{
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double to_double(const std::string& s, const std::string& key, int line)
{
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    fail(key, line, "expected a number, got '" + s + "'");
  return v;
}

std::uint64_t to_u64(const std::string& s, const std::string& key, int line)
{
  std::uint64_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    fail(key, line, "expected a non-negative integer, got '" + s + "'");
  return v;
}

MetroAntenna to_antenna(const std::string& s, const std::string& key, int line)
{
  if (auto a = parse_metro_antenna(s))
    return *a;
  fail(key, line, "unknown pattern '" + s + "' (dipole1, dipole2, dipole4, quasi_omni)");
}

const std::string& scalar(const RawValue& v, const std::string& key)
{
  if (v.is_list || v.items.size() != 1)
    fail(key, v.line, "expected a single value");
  return v.items.front();
}

template <class Access>
Field number(std::string section, std::string name, Access access)
{
  return Field{std::move(section), std::move(name),
               [access](ExperimentConfig& c, const RawValue& v, const std::string& key) {
                 access(c) = to_double(scalar(v, key), key, v.line);
               },
               [access](const ExperimentConfig& c) { return format_double(access(c)); }};
}

template <class Access>
Field integer(std::string section, std::string name, Access access)
{
  return Field{std::move(section), std::move(name),
               [access](ExperimentConfig& c, const RawValue& v, const std::string& key) {
                 access(c) = to_u64(scalar(v, key), key, v.line);
               },
               [access](const ExperimentConfig& c) { return std::to_string(access(c)); }};
}

template <class Access>
Field antenna_list(std::string section, std::string name, Access access)
{
  return Field{std::move(section), std::move(name),
               [access](ExperimentConfig& c, const RawValue& v, const std::string& key) {
                 std::vector<MetroAntenna> out;
                 for (const std::string& s : v.items)
                   out.push_back(to_antenna(s, key, v.line));
                 access(c) = out;
               },
               [access](const ExperimentConfig& c) {
                 std::string s = "[";
                 for (std::size_t i = 0; i < access(c).size(); ++i)
                   s += (i ? ", " : "") + std::string(to_string(access(c)[i]));
                 return s + "]";
               }};
}

template <class Access>
Field number_list(std::string section, std::string name, Access access)
{
  return Field{std::move(section), std::move(name),
               [access](ExperimentConfig& c, const RawValue& v, const std::string& key) {
                 std::vector<double> out;
                 for (const std::string& s : v.items)
                   out.push_back(to_double(s, key, v.line));
                 access(c) = out;
               },
               [access](const ExperimentConfig& c) {
                 std::string s = "[";
                 for (std::size_t i = 0; i < access(c).size(); ++i)
                   s += (i ? ", " : "") + format_double(access(c)[i]);
                 return s + "]";
               }};
}

#define HETSIM_ACCESS(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<Field>& fields()
{
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(number("macro", "tx_power_dbm", HETSIM_ACCESS(scenario.macro.tx_power_dbm)));
    f.push_back(number("macro", "density_per_km2", HETSIM_ACCESS(scenario.macro.density_per_km2)));
    f.push_back(number("macro", "height_m", HETSIM_ACCESS(scenario.macro.height_m)));
    f.push_back(number("macro", "downtilt_deg", HETSIM_ACCESS(scenario.macro.downtilt_deg)));
    f.push_back(number("macro", "horiz_hpbw_deg", HETSIM_ACCESS(scenario.macro.antenna.horiz_hpbw_deg)));
    f.push_back(number("macro", "fbr_db", HETSIM_ACCESS(scenario.macro.antenna.fbr_db)));
    f.push_back(number("macro", "vert_hpbw_deg", HETSIM_ACCESS(scenario.macro.antenna.vert_hpbw_deg)));
    f.push_back(number("macro", "sll_db", HETSIM_ACCESS(scenario.macro.antenna.sll_db)));
    f.push_back(number("macro", "max_gain_dbi", HETSIM_ACCESS(scenario.macro.antenna.max_gain_dbi)));
    f.push_back(number("macro", "path_loss_intercept_db",
                       HETSIM_ACCESS(scenario.macro.path_loss.intercept_db)));
    f.push_back(number("macro", "path_loss_slope_db", HETSIM_ACCESS(scenario.macro.path_loss.slope_db)));

    f.push_back(number("metro", "tx_power_dbm", HETSIM_ACCESS(scenario.metro.tx_power_dbm)));
    f.push_back(number("metro", "density_per_km2", HETSIM_ACCESS(scenario.metro.density_per_km2)));
    f.push_back(number("metro", "height_m", HETSIM_ACCESS(scenario.metro.height_m)));
    f.push_back(Field{"metro", "pattern",
                      [](ExperimentConfig& c, const RawValue& v, const std::string& key) {
                        c.scenario.metro.antenna = to_antenna(scalar(v, key), key, v.line);
                      },
                      [](const ExperimentConfig& c) {
                        return std::string(to_string(c.scenario.metro.antenna));
                      }});
    f.push_back(number("metro", "downtilt_deg", HETSIM_ACCESS(scenario.metro.downtilt_deg)));
    f.push_back(number("metro", "path_loss_intercept_db",
                       HETSIM_ACCESS(scenario.metro.path_loss.intercept_db)));
    f.push_back(number("metro", "path_loss_slope_db", HETSIM_ACCESS(scenario.metro.path_loss.slope_db)));

    f.push_back(number("buildings", "density_per_km2", HETSIM_ACCESS(scenario.buildings.density_per_km2)));
    f.push_back(number("buildings", "attenuation_db", HETSIM_ACCESS(scenario.buildings.attenuation_db)));
    f.push_back(number("buildings", "length_min_m", HETSIM_ACCESS(scenario.buildings.length_min_m)));
    f.push_back(number("buildings", "length_max_m", HETSIM_ACCESS(scenario.buildings.length_max_m)));
    f.push_back(number("buildings", "height_min_m", HETSIM_ACCESS(scenario.buildings.height_min_m)));
    f.push_back(number("buildings", "height_max_m", HETSIM_ACCESS(scenario.buildings.height_max_m)));

    f.push_back(number("simulation", "bias_db", HETSIM_ACCESS(scenario.bias_db)));
    f.push_back(number("simulation", "region_radius_km", HETSIM_ACCESS(scenario.region_radius_km)));
    f.push_back(number("simulation", "user_height_m", HETSIM_ACCESS(scenario.user_height_m)));
    f.push_back(integer("simulation", "drops", HETSIM_ACCESS(scenario.drops)));
    f.push_back(integer("simulation", "seed", HETSIM_ACCESS(scenario.master_seed)));
    f.push_back(Field{"simulation", "power_mode",
                      [](ExperimentConfig& c, const RawValue& v, const std::string& key) {
                        const std::string& s = scalar(v, key);
                        auto m = parse_power_mode(s);
                        if (!m)
                          fail(key, v.line, "unknown power mode '" + s + "' (same_power, same_eirp)");
                        c.scenario.power_mode = *m;
                      },
                      [](const ExperimentConfig& c) {
                        return std::string(to_string(c.scenario.power_mode));
                      }});
    f.push_back(number("simulation", "carrier_frequency_ghz",
                       HETSIM_ACCESS(scenario.carrier_frequency_ghz)));

    f.push_back(antenna_list("sweep", "patterns", HETSIM_ACCESS(sweep.patterns)));
    f.push_back(number("sweep", "tilt_start_deg", HETSIM_ACCESS(sweep.tilt_start_deg)));
    f.push_back(number("sweep", "tilt_stop_deg", HETSIM_ACCESS(sweep.tilt_stop_deg)));
    f.push_back(number("sweep", "tilt_step_deg", HETSIM_ACCESS(sweep.tilt_step_deg)));

    f.push_back(antenna_list("radius", "patterns", HETSIM_ACCESS(radius.patterns)));
    f.push_back(number_list("radius", "tilts_deg", HETSIM_ACCESS(radius.tilts_deg)));
    return f;
  }();
  return table;
}

#undef HETSIM_ACCESS

const Field* find_field(const std::string& section, const std::string& name)
{
  for (const Field& f : fields())
    if (f.section == section && f.name == name)
      return &f;
  return nullptr;
}

bool is_section(const std::string& section)
{
  for (const Field& f : fields())
    if (f.section == section)
      return true;
  return false;
}

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

RawValue raw_from_yaml(const YAML::Node& node, const std::string& key)
{
  RawValue v;
  v.line = line_of(node);
  if (node.IsSequence()) {
    v.is_list = true;
    for (const YAML::Node& item : node) {
      if (!item.IsScalar())
        fail(key, line_of(item), "list items must be scalars");
      v.items.push_back(item.Scalar());
    }
  } else if (node.IsScalar()) {
    v.items.push_back(node.Scalar());
  } else {
    fail(key, v.line, "expected a value");
  }
  return v;
}

// A comma in an override or scalar is a list separator for list-valued keys.
RawValue split_list(const RawValue& v)
{
  if (v.is_list || v.items.size() != 1)
    return v;
  RawValue out{{}, true, v.line};
  std::string text = v.items.front();
  if (!text.empty() && text.front() == '[' && text.back() == ']')
    text = text.substr(1, text.size() - 2);
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty())
      out.items.push_back(item);
  }
  return out;
}

bool is_list_key(const std::string& key) { return key == "sweep.patterns" || key == "radius.patterns" || key == "radius.tilts_deg"; }

void validate_grids(const ExperimentConfig& c, const std::map<std::string, int>& lines)
{
  auto line = [&](const std::string& key) {
    auto it = lines.find(key);
    return it == lines.end() ? 0 : it->second;
  };
  const SweepGrid& s = c.sweep;
  if (s.patterns.empty())
    fail("sweep.patterns", line("sweep.patterns"), "must not be empty");
  if (!(s.tilt_step_deg > 0.0))
    fail("sweep.tilt_step_deg", line("sweep.tilt_step_deg"), "must be > 0");
  if (!(s.tilt_start_deg >= 0.0))
    fail("sweep.tilt_start_deg", line("sweep.tilt_start_deg"), "must be >= 0");
  if (!(s.tilt_stop_deg >= s.tilt_start_deg && s.tilt_stop_deg < 90.0))
    fail("sweep.tilt_stop_deg", line("sweep.tilt_stop_deg"), "must lie in [tilt_start_deg, 90)");
  if (c.radius.patterns.empty())
    fail("radius.patterns", line("radius.patterns"), "must not be empty");
  for (double t : c.radius.tilts_deg)
    if (!(t >= 0.0 && t < 90.0))
      fail("radius.tilts_deg", line("radius.tilts_deg"), "tilts must lie in [0, 90)");
}

} // namespace

std::vector<double> SweepGrid::tilts() const
{
  std::vector<double> out;
  if (!(tilt_step_deg > 0.0))
    return out;
  for (std::size_t i = 0;; ++i) {
    const double t = tilt_start_deg + static_cast<double>(i) * tilt_step_deg;
    if (t > tilt_stop_deg + 1e-9)
      break;
    out.push_back(t);
  }
  return out;
}

std::vector<std::string> config_keys()
{
  std::vector<std::string> keys;
  for (const Field& f : fields())
    keys.push_back(f.key());
  return keys;
}

ExperimentConfig parse_config(std::string_view text, std::span<const std::string> overrides)
{
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    fail("", e.mark.line + 1, "parse error: " + e.msg);
  }

  std::map<std::string, RawValue> assigned;
  if (root.IsDefined() && !root.IsNull()) {
    if (!root.IsMap())
      fail("", line_of(root), "top level must be a mapping of sections");
    for (const auto& sec : root) {
      const std::string section = sec.first.as<std::string>();
      if (!is_section(section))
        fail(section, line_of(sec.first), "unknown section");
      if (sec.second.IsNull())
        continue;
      if (!sec.second.IsMap())
        fail(section, line_of(sec.second), "section must be a mapping");
      for (const auto& kv : sec.second) {
        const std::string name = kv.first.as<std::string>();
        const std::string key = section + "." + name;
        if (!find_field(section, name))
          fail(key, line_of(kv.first), "unknown key");
        if (assigned.count(key))
          fail(key, line_of(kv.first), "duplicate key");
        assigned[key] = raw_from_yaml(kv.second, key);
      }
    }
  }

  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      fail("", 0, "override '" + ov + "' is not of the form section.key=value");
    const std::string key = trim(std::string_view(ov).substr(0, eq));
    const auto dot = key.find('.');
    if (dot == std::string::npos || !find_field(key.substr(0, dot), key.substr(dot + 1)))
      fail(key, 0, "unknown key in override");
    assigned[key] = RawValue{{trim(std::string_view(ov).substr(eq + 1))}, false, 0};
  }

  ExperimentConfig config;
  std::map<std::string, int> lines;
  for (const Field& f : fields()) {
    const auto it = assigned.find(f.key());
    if (it == assigned.end())
      continue;
    const RawValue v = is_list_key(f.key()) ? split_list(it->second) : it->second;
    lines[f.key()] = v.line;
    f.set(config, v, f.key());
  }

  Scenario& s = config.scenario;
  if (s.power_mode == PowerMode::SameEirp && !assigned.count("metro.tx_power_dbm"))
    s.metro.tx_power_dbm = same_eirp_tx_power_dbm(s.metro.antenna);

  try {
    validate(s);
  } catch (const InvalidParameter& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    const std::string key = colon == std::string::npos ? std::string() : msg.substr(0, colon);
    const auto it = lines.find(key);
    const int line = it == lines.end() ? 0 : it->second;
    throw ConfigError(key, line, line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
  }
  validate_grids(config, lines);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::span<const std::string> overrides)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("", 0, "cannot read config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::string to_config_text(const ExperimentConfig& config)
{
  std::string out;
  std::string section;
  for (const Field& f : fields()) {
    if (f.section != section) {
      if (!section.empty())
        out += "\n";
      section = f.section;
      out += section + ":\n";
    }
    out += "  " + f.name + ": " + f.get(config) + "\n";
  }
  return out;
}

} // namespace hetsim
