#include "gsfrac/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gsfrac/error.hpp"

namespace gsfrac {

namespace {

constexpr double kSafety = 0.9;

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

SimState make_initial_state(const GridSpec& grid, const InitialCondition& ic) {
  SimState st{fill(grid, 1.0), fill(grid, 0.0), 0.0, 0};
  if (ic.kind == IcKind::paper) return st;

  const SeededIc& sd = ic.seeded;
  const double cx = sd.cx * grid.nx * grid.h;
  const double cy = sd.cy * grid.ny * grid.h;
  const double hw = sd.half_width * grid.length;
  std::mt19937_64 gen(sd.rng_seed);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      if (std::abs(grid.x_center(i) - cx) > hw || std::abs(grid.y_center(j) - cy) > hw) {
        continue;
      }
      const double nu = sd.noise_amp * (2.0 * unit_uniform(gen) - 1.0);
      const double nv = sd.noise_amp * (2.0 * unit_uniform(gen) - 1.0);
      st.u(i, j) = sd.u_val + nu;
      st.v(i, j) = sd.v_val + nv;
    }
  }
  return st;
}

double estimate_stable_dt(const GrayScottParams& p, const GridSpec& grid,
                          const FracKernel* kernel) {
  const double h2 = grid.h * grid.h;
  double dt = h2 / (4.0 * p.d2);
  if (p.variant == Variant::local) {
    dt = std::min(dt, h2 / (4.0 * p.d1));
  } else {
    if (!kernel) throw InvalidArgument("mixed variant needs a fractional kernel");
    dt = std::min(dt, 1.0 / (p.d1 * kernel->max_diag()));
  }
  return kSafety * dt;
}

Stepper::Stepper(const GrayScottParams& p, const GridSpec& grid, const FracKernel* kernel)
    : params_(p), kernel_(kernel), lu_(grid), lv_(grid) {
  if (p.variant == Variant::mixed) {
    if (!kernel) throw InvalidArgument("mixed variant needs a fractional kernel");
    if (!(kernel->grid() == grid)) throw GridMismatch("kernel built for another grid");
    if (kernel->s() != p.s) throw InvalidArgument("kernel order differs from params.s");
    ws_.emplace(*kernel);
  }
}

void Stepper::advance(SimState& state, double dt) {
  require_same_grid(state.u, state.v, "step");
  require_same_grid(state.u, lu_, "step");
  if (params_.variant == Variant::mixed) {
    apply_frac_fast(*kernel_, state.u, lu_, *ws_);
  } else {
    apply_local_laplacian(state.u, lu_, true);
  }
  apply_local_laplacian(state.v, lv_, true);

  const double d1 = params_.d1;
  const double d2 = params_.d2;
  const bool react = params_.reactions;
  const std::size_t n = state.u.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double u = state.u[k];
    const double v = state.v[k];
    double du = d1 * lu_[k];
    double dv = d2 * lv_[k];
    if (react) {
      du += g1(u, v, params_);
      dv += g2(u, v, params_);
    }
    state.u[k] = u + dt * du;
    state.v[k] = v + dt * dv;
  }
  ++state.step_count;
  state.t += dt;

  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(state.u[k]) || !std::isfinite(state.v[k])) {
      const auto& g = state.grid();
      const int i = static_cast<int>(k / static_cast<std::size_t>(g.ny));
      const int j = static_cast<int>(k % static_cast<std::size_t>(g.ny));
      throw NumericError(std::string("non-finite ") +
                         (std::isfinite(state.u[k]) ? "v" : "u") + " at cell (" +
                         std::to_string(i) + ", " + std::to_string(j) + ") after step " +
                         std::to_string(state.step_count));
    }
  }
}

SimState step(const SimState& state, const GrayScottParams& p, const FracKernel* kernel,
              double dt) {
  SimState next = state;
  Stepper stepper(p, state.grid(), kernel);
  stepper.advance(next, dt);
  return next;
}

std::int64_t step_count_for(double t_end, double dt) {
  if (!(t_end > 0.0)) return 0;
  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(ratio));
}

RunResult run_from(const GrayScottParams& p, SimState initial, const FracKernel* kernel,
                   const StepConfig& cfg, const OutputSinks& sinks) {
  validate(p);
  if (cfg.monitor_every < 1) throw InvalidArgument("monitor_every must be >= 1");
  if (cfg.snapshot_every < 0) throw InvalidArgument("snapshot_every must be >= 0");
  if (!(cfg.t_end >= 0.0)) throw InvalidArgument("t_end must be >= 0");
  const GridSpec grid = initial.grid();

  RunResult res;
  res.dt = cfg.dt > 0.0 ? cfg.dt
                        : std::min(estimate_stable_dt(p, grid, kernel), cfg.dt_max);
  if (!(res.dt > 0.0) || !std::isfinite(res.dt)) {
    throw InvalidArgument("time step must be positive and finite");
  }
  res.steps = step_count_for(cfg.t_end, res.dt);

  const Bounds bounds = compute_bounds(initial, p);
  Stepper stepper(p, grid, kernel);
  SimState& st = res.final_state;
  st = std::move(initial);
  const double t0 = st.t;
  const std::int64_t k0 = st.step_count;

  auto observe = [&](std::int64_t k) {
    if (k % cfg.monitor_every == 0) {
      InvariantReport r = monitor(st, bounds, cfg.tol);
      if (sinks.report) sinks.report(r);
      const int hard = r.hard_violations();
      res.reports.push_back(std::move(r));
      if (hard > 0 && cfg.abort_on_violation) {
        const auto& v = res.reports.back().violations;
        auto it = std::find_if(v.begin(), v.end(),
                               [](const Violation& x) { return x.severity == Severity::hard; });
        throw InvariantViolation("hard violation '" + it->name + "' at t = " +
                                 std::to_string(st.t) + ": measured " +
                                 std::to_string(it->measured) + ", bound " +
                                 std::to_string(it->bound));
      }
    }
    if (cfg.snapshot_every > 0 && k % cfg.snapshot_every == 0 && sinks.snapshot) {
      sinks.snapshot(st);
    }
  };

  observe(0);
  for (std::int64_t k = 1; k <= res.steps; ++k) {
    stepper.advance(st, res.dt);
    st.t = t0 + static_cast<double>(k) * res.dt;
    st.step_count = k0 + k;
    observe(k);
  }
  return res;
}

RunResult run(const GrayScottParams& p, const GridSpec& grid, const StepConfig& cfg,
              const OutputSinks& sinks) {
  validate(p);
  std::optional<FracKernel> kernel;
  if (p.variant == Variant::mixed) kernel.emplace(grid, p.s, cfg.frac_refine);
  return run_from(p, make_initial_state(grid, cfg.ic), kernel ? &*kernel : nullptr, cfg,
                  sinks);
}

}  // namespace gsfrac
