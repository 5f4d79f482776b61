#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsfrac/grid.hpp"
#include "gsfrac/integrator.hpp"
#include "gsfrac/reactions.hpp"

namespace gsfrac {

/// Everything needed to reproduce one simulation.
struct RunConfig {
  std::string preset = "paper";
  GrayScottParams params;
  int nx = 256;
  int ny = 256;
  double length = 1.0;
  StepConfig step;
  std::string output_dir = "out";

  GridSpec grid() const { return make_grid(nx, ny, length); }
};

/// Canonical comparison: equal iff the serialized forms are equal.
bool operator==(const RunConfig& a, const RunConfig& b);

/// "paper": f = 0.04, kappa = 0.0636, d1 = 1, d2 = 0.5 on a 256 x 256 unit
/// square, t_end = 1e5.
/// "pearson": same kinetics with d1 = 2e-5, d2 = 1e-5 on 64 x 64,
/// t_end = 2e5, dt_max = 1.
/// Throws ConfigError for any other name.
RunConfig preset_config(std::string_view name);

std::vector<std::string> preset_names();

/// Every accepted key, sorted.
std::vector<std::string> config_keys();

/// Parses `key = value` lines; `#` starts a comment. The preset (default
/// "paper") is expanded first, then the remaining keys override it in file
/// order. Unknown or repeated keys, bad values and failed validation raise
/// ConfigError carrying the offending line.
RunConfig parse_config(std::string_view text);

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Same, with command-line style overrides applied after the file entries.
/// A "preset" override replaces the file's preset. Errors from overrides are
/// reported against line 0 and name the key.
RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides);

/// Canonical text: all keys, sorted, one `key = value` per line, numbers in
/// shortest round-trip form.
std::string serialize_config(const RunConfig& cfg);

/// Throws ConfigError (line 0) naming the first invalid key.
void validate(const RunConfig& cfg);

}  // namespace gsfrac
