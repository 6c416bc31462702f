#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wetplan/model.hpp"

namespace wetplan {

// Parse/validation failure in a user-supplied file; messages carry
// "origin:line:" anchors where a line is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Unit { kNone, kPower, kEnergy, kTime, kLength, kFrequency };

// "2.4 GHz" / "10 uW" / "0.25" -> SI value. A bare number is taken as
// already-SI; a unit token must belong to the expected dimension.
double parse_quantity(const std::string& text, Unit unit);

std::int64_t parse_integer(const std::string& text);

struct KeyValueLine {
  std::string key;    // may contain spaces ("device 3")
  std::string value;  // text right of '=', trimmed
  int line = 0;
};

// '#' starts a comment; blank lines skipped; everything else must be
// "key = value".
std::vector<KeyValueLine> parse_key_value_lines(const std::string& text,
                                                const std::string& origin);

struct ScenarioFile {
  Scenario scenario;
  bool explicit_devices = false;  // positions were listed in the file
  std::uint64_t device_seed = 1;  // used to draw positions otherwise
};

ScenarioFile scenario_from_text(const std::string& text, const std::string& origin);
ScenarioFile load_scenario(const std::string& path);

// One battery level per line (energy unit suffix optional), '#' comments.
std::vector<double> batteries_from_text(const std::string& text, const std::string& origin);
std::vector<double> load_batteries(const std::string& path);

std::string read_text_file(const std::string& path);  // ConfigError when unreadable

}  // namespace wetplan
