#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "gsfrac/grid.hpp"
#include "gsfrac/monitors.hpp"
#include "gsfrac/operators.hpp"
#include "gsfrac/reactions.hpp"

namespace gsfrac {

/// Centered square perturbation of the trivial state. Positions and the
/// half-width are fractions of the domain extent; noise is uniform in
/// [-noise_amp, noise_amp] and applied inside the square only, so the
/// background stays at exactly (1, 0).
struct SeededIc {
  double cx = 0.5;
  double cy = 0.5;
  double half_width = 1.0 / 16.0;
  double u_val = 0.5;
  double v_val = 0.25;
  double noise_amp = 0.01;
  std::uint64_t rng_seed = 1;
};

enum class IcKind {
  paper,   // u = 1, v = 0 everywhere (an exact equilibrium)
  seeded,  // SeededIc
};

struct InitialCondition {
  IcKind kind = IcKind::seeded;
  SeededIc seeded;
};

SimState make_initial_state(const GridSpec& grid, const InitialCondition& ic);

struct StepConfig {
  double dt = 0.0;      // 0 selects min(estimate_stable_dt, dt_max)
  double dt_max = 1.0;  // only used for the automatic step
  double t_end = 0.0;
  int monitor_every = 1;
  int snapshot_every = 0;  // 0 disables snapshots
  int frac_refine = 1;     // FracKernel near_refine
  InitialCondition ic;
  MonitorTolerances tol;
  bool abort_on_violation = true;
};

/// Largest forward-Euler step that keeps each diffusion update a convex
/// combination of old values, times a safety factor of 0.9:
///   local Laplacian with coefficient d:   h^2 / (4 d)
///   fractional operator with coeff d1:   1 / (d1 * max diag)
/// Returns the minimum over the operators in use. Throws InvalidArgument
/// when the mixed variant is requested without a kernel.
double estimate_stable_dt(const GrayScottParams& p, const GridSpec& grid,
                          const FracKernel* kernel);

/// Reusable explicit-Euler stepper; owns the scratch fields and FFT buffers.
/// The kernel must outlive the stepper.
class Stepper {
 public:
  Stepper(const GrayScottParams& p, const GridSpec& grid, const FracKernel* kernel);

  /// One Euler step in place:
  ///   u += dt (d1 L u + g1(u, v)),  v += dt (d2 Lap v + g2(u, v)).
  /// Throws NumericError naming the first non-finite cell.
  void advance(SimState& state, double dt);

  const GrayScottParams& params() const noexcept { return params_; }

 private:
  GrayScottParams params_;
  const FracKernel* kernel_;
  std::optional<FracWorkspace> ws_;
  Field lu_;
  Field lv_;
};

/// Functional single step.
SimState step(const SimState& state, const GrayScottParams& p, const FracKernel* kernel,
              double dt);

struct OutputSinks {
  std::function<void(const SimState&)> snapshot;
  std::function<void(const InvariantReport&)> report;
};

struct RunResult {
  SimState final_state;
  std::vector<InvariantReport> reports;
  double dt = 0.0;
  std::int64_t steps = 0;
};

/// Number of steps of size dt that reach t_end (rounding up, with a small
/// tolerance for t_end being an integer multiple of dt).
std::int64_t step_count_for(double t_end, double dt);

/// Builds the kernel (mixed variant) and the initial state, then steps to
/// t_end. A report is produced at step 0 and every monitor_every steps; a
/// snapshot at step 0 and every snapshot_every steps. Hard violations throw
/// InvariantViolation when abort_on_violation is set.
RunResult run(const GrayScottParams& p, const GridSpec& grid, const StepConfig& cfg,
              const OutputSinks& sinks = {});

/// Same, from a given initial state and an optional prebuilt kernel.
RunResult run_from(const GrayScottParams& p, SimState initial, const FracKernel* kernel,
                   const StepConfig& cfg, const OutputSinks& sinks = {});

}  // namespace gsfrac
