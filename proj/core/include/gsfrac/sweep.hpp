#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "gsfrac/grid.hpp"
#include "gsfrac/integrator.hpp"
#include "gsfrac/reactions.hpp"

namespace gsfrac {

/// Root-mean-square difference of the two fields after each is affinely
/// rescaled to [0, 1]. A constant field rescales to 0.5 everywhere. Result is
/// in [0, 1]. Throws GridMismatch.
double pattern_distance(const Field& a, const Field& b);

enum class DistanceField { u, v, uv };

std::string_view to_string(DistanceField f) noexcept;
DistanceField parse_distance_field(std::string_view text);

struct SweepConfig {
  GrayScottParams base;  // variant and s are overridden per run
  GridSpec grid;
  StepConfig step;
  DistanceField field = DistanceField::v;
  int workers = 1;
};

struct SweepResult {
  std::vector<double> s_values;
  std::vector<double> distances;  // to the local-model reference
  std::vector<double> runtimes;   // wall seconds per mixed run
  double reference_runtime = 0.0;
};

/// Runs the local model once as the reference, then the mixed model for each
/// s, all from the same initial condition and step settings, and compares
/// final states with pattern_distance. Runs are spread over `workers`
/// threads; results are returned in request order. A failing run is
/// rethrown in the same category (NumericError, InvariantViolation, else
/// Error) with the offending s in the message.
SweepResult run_s_sweep(const SweepConfig& cfg, const std::vector<double>& s_values);

/// Header `s,distance,wall_time_seconds`, one row per s in request order,
/// then the local reference as s = 1 with distance 0.
void write_sweep_csv(const SweepResult& result, std::ostream& os);

}  // namespace gsfrac
