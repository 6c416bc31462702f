#include "wetplan/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

namespace wetplan {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::kPower: return "power";
    case Unit::kEnergy: return "energy";
    case Unit::kTime: return "time";
    case Unit::kLength: return "length";
    case Unit::kFrequency: return "frequency";
    default: return "dimensionless";
  }
}

// Returns the SI scale for a unit token, or 0 when the token does not belong
// to the dimension. "µ" (U+00B5) and "u" prefixes are interchangeable.
double unit_scale(const std::string& tok, Unit u) {
  auto is = [&tok](const char* a) { return tok == a; };
  switch (u) {
    case Unit::kPower:
      if (is("W")) return 1.0;
      if (is("mW")) return 1e-3;
      if (is("uW") || is("\xc2\xb5W")) return 1e-6;
      if (is("kW")) return 1e3;
      return 0.0;
    case Unit::kEnergy:
      if (is("J")) return 1.0;
      if (is("mJ")) return 1e-3;
      if (is("uJ") || is("\xc2\xb5J")) return 1e-6;
      if (is("kJ")) return 1e3;
      return 0.0;
    case Unit::kTime:
      if (is("s")) return 1.0;
      if (is("ms")) return 1e-3;
      if (is("min")) return 60.0;
      if (is("h")) return 3600.0;
      return 0.0;
    case Unit::kLength:
      if (is("m")) return 1.0;
      if (is("cm")) return 1e-2;
      if (is("mm")) return 1e-3;
      if (is("km")) return 1e3;
      return 0.0;
    case Unit::kFrequency:
      if (is("Hz")) return 1.0;
      if (is("kHz")) return 1e3;
      if (is("MHz")) return 1e6;
      if (is("GHz")) return 1e9;
      return 0.0;
    default:
      return 0.0;
  }
}

}  // namespace

double parse_quantity(const std::string& text, Unit unit) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty value where a " + std::string(unit_name(unit)) +
                                   " quantity was expected");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || errno == ERANGE) throw ConfigError("not a number: '" + s + "'");
  const std::string tok = trim(std::string(end));
  if (tok.empty()) return v;
  if (unit == Unit::kNone) {
    throw ConfigError("unexpected unit '" + tok + "' on a dimensionless value");
  }
  const double scale = unit_scale(tok, unit);
  if (scale == 0.0) {
    throw ConfigError("unknown " + std::string(unit_name(unit)) + " unit '" + tok + "'");
  }
  return v * scale;
}

std::int64_t parse_integer(const std::string& text) {
  const std::string s = trim(text);
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  return v;
}

std::vector<KeyValueLine> parse_key_value_lines(const std::string& text,
                                                const std::string& origin) {
  std::vector<KeyValueLine> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    KeyValueLine kv;
    kv.key = trim(line.substr(0, eq));
    kv.value = trim(line.substr(eq + 1));
    kv.line = lineno;
    if (kv.key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": missing key before '='");
    }
    out.push_back(std::move(kv));
  }
  return out;
}

ScenarioFile scenario_from_text(const std::string& text, const std::string& origin) {
  ScenarioFile file;
  Scenario& sc = file.scenario;
  sc.devices.clear();

  bool num_devices_given = false;
  int num_devices = 64;
  std::vector<std::pair<int, Position>> listed;

  for (const KeyValueLine& kv : parse_key_value_lines(text, origin)) {
    const auto where = [&] { return origin + ":" + std::to_string(kv.line) + ": "; };
    try {
      if (kv.key == "area_width") {
        sc.area_width_m = parse_quantity(kv.value, Unit::kLength);
      } else if (kv.key == "area_height") {
        sc.area_height_m = parse_quantity(kv.value, Unit::kLength);
      } else if (kv.key == "num_devices") {
        num_devices = static_cast<int>(parse_integer(kv.value));
        num_devices_given = true;
      } else if (kv.key == "num_beacons") {
        sc.num_beacons = static_cast<int>(parse_integer(kv.value));
      } else if (kv.key == "slot_duration") {
        sc.slot_duration_s = parse_quantity(kv.value, Unit::kTime);
      } else if (kv.key == "e_max") {
        sc.e_max_j = parse_quantity(kv.value, Unit::kEnergy);
      } else if (kv.key == "e_th") {
        sc.e_th_j = parse_quantity(kv.value, Unit::kEnergy);
      } else if (kv.key == "p_max") {
        sc.p_max_w = parse_quantity(kv.value, Unit::kPower);
      } else if (kv.key == "p_sleep") {
        sc.p_sleep_w = parse_quantity(kv.value, Unit::kPower);
      } else if (kv.key == "p_active") {
        sc.p_active_w = parse_quantity(kv.value, Unit::kPower);
      } else if (kv.key == "frequency") {
        sc.radio.frequency_hz = parse_quantity(kv.value, Unit::kFrequency);
      } else if (kv.key == "combined_gain") {
        sc.radio.combined_gain = parse_quantity(kv.value, Unit::kNone);
      } else if (kv.key == "pathloss_exponent") {
        sc.radio.pathloss_exponent = parse_quantity(kv.value, Unit::kNone);
      } else if (kv.key == "min_distance") {
        sc.radio.min_distance_m = parse_quantity(kv.value, Unit::kLength);
      } else if (kv.key == "eh_saturation") {
        sc.eh.saturation_w = parse_quantity(kv.value, Unit::kPower);
      } else if (kv.key == "eh_c0") {
        sc.eh.c0 = parse_quantity(kv.value, Unit::kNone);
      } else if (kv.key == "eh_c1") {
        sc.eh.c1 = parse_quantity(kv.value, Unit::kNone);
      } else if (kv.key == "activation_beta_a") {
        sc.activation.beta_a = parse_quantity(kv.value, Unit::kNone);
      } else if (kv.key == "activation_beta_b") {
        sc.activation.beta_b = parse_quantity(kv.value, Unit::kNone);
      } else if (kv.key == "device_seed") {
        file.device_seed = static_cast<std::uint64_t>(parse_integer(kv.value));
      } else if (kv.key.rfind("device ", 0) == 0) {
        const int idx = static_cast<int>(parse_integer(kv.key.substr(7)));
        std::istringstream vs(kv.value);
        Position p;
        if (!(vs >> p.x >> p.y)) throw ConfigError("expected 'x y' coordinates");
        std::string rest;
        if (vs >> rest) throw ConfigError("trailing text after coordinates");
        listed.emplace_back(idx, p);
      } else {
        throw ConfigError("unknown key '" + kv.key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(where() + e.what());
    }
  }

  if (!listed.empty()) {
    file.explicit_devices = true;
    if (num_devices_given && num_devices != static_cast<int>(listed.size())) {
      throw ConfigError(origin + ": num_devices = " + std::to_string(num_devices) + " but " +
                        std::to_string(listed.size()) + " device rows listed");
    }
    sc.devices.resize(listed.size());
    std::vector<char> seen(listed.size(), 0);
    for (const auto& [idx, pos] : listed) {
      if (idx < 0 || idx >= static_cast<int>(listed.size()) || seen[idx]) {
        throw ConfigError(origin + ": device indices must cover 0.." +
                          std::to_string(listed.size() - 1) + " exactly once");
      }
      seen[idx] = 1;
      sc.devices[static_cast<std::size_t>(idx)] = pos;
    }
  } else {
    if (!num_devices_given) {
      throw ConfigError(origin + ": set num_devices or list device rows");
    }
    if (num_devices < 1) throw ConfigError(origin + ": num_devices must be >= 1");
    sc.devices.resize(static_cast<std::size_t>(num_devices));
    resample_positions(sc, file.device_seed);
  }

  try {
    validate_scenario(sc);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return file;
}

ScenarioFile load_scenario(const std::string& path) {
  return scenario_from_text(read_text_file(path), path);
}

std::vector<double> batteries_from_text(const std::string& text, const std::string& origin) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    try {
      out.push_back(parse_quantity(body, Unit::kEnergy));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (out.back() < 0.0) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": battery level must be >= 0");
    }
  }
  if (out.empty()) throw ConfigError(origin + ": no battery levels found");
  return out;
}

std::vector<double> load_batteries(const std::string& path) {
  return batteries_from_text(read_text_file(path), path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": file not found or unreadable");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace wetplan
