#include "gsfrac/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include "gsfrac/error.hpp"
#include "gsfrac/io.hpp"

namespace gsfrac {

namespace {

std::vector<double> normalized(const Field& f) {
  const double lo = f.min();
  const double hi = f.max();
  std::vector<double> out(f.size(), 0.5);
  if (hi > lo) {
    const double inv = 1.0 / (hi - lo);
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = (f[k] - lo) * inv;
  }
  return out;
}

double sum_sq_diff(const Field& a, const Field& b) {
  const auto na = normalized(a);
  const auto nb = normalized(b);
  double acc = 0.0;
  for (std::size_t k = 0; k < na.size(); ++k) {
    const double d = na[k] - nb[k];
    acc += d * d;
  }
  return acc;
}

double state_distance(const SimState& a, const SimState& b, DistanceField which) {
  switch (which) {
    case DistanceField::u:
      return pattern_distance(a.u, b.u);
    case DistanceField::v:
      return pattern_distance(a.v, b.v);
    case DistanceField::uv:
      break;
  }
  require_same_grid(a.u, b.u, "pattern_distance");
  const double n = static_cast<double>(a.u.size());
  return std::sqrt((sum_sq_diff(a.u, b.u) + sum_sq_diff(a.v, b.v)) / (2.0 * n));
}

}  // namespace

double pattern_distance(const Field& a, const Field& b) {
  require_same_grid(a, b, "pattern_distance");
  return std::sqrt(sum_sq_diff(a, b) / static_cast<double>(a.size()));
}

std::string_view to_string(DistanceField f) noexcept {
  switch (f) {
    case DistanceField::u:
      return "u";
    case DistanceField::v:
      return "v";
    case DistanceField::uv:
      return "uv";
  }
  return "v";
}

DistanceField parse_distance_field(std::string_view text) {
  if (text == "u") return DistanceField::u;
  if (text == "v") return DistanceField::v;
  if (text == "uv") return DistanceField::uv;
  throw InvalidArgument("distance field must be u, v or uv");
}

SweepResult run_s_sweep(const SweepConfig& cfg, const std::vector<double>& s_values) {
  SweepResult res;
  res.s_values = s_values;
  if (s_values.empty()) return res;
  for (double s : s_values) {
    if (!(s > 0.0 && s < 1.0)) {
      throw InvalidArgument("sweep s values must lie in (0, 1), got " + std::to_string(s));
    }
  }

  // Job 0 is the local reference, job k the mixed run for s_values[k - 1].
  const std::size_t jobs = s_values.size() + 1;
  std::vector<SimState> finals(jobs);
  std::vector<double> seconds(jobs, 0.0);
  std::vector<std::exception_ptr> errors(jobs);

  auto run_job = [&](std::size_t k) {
    GrayScottParams p = cfg.base;
    if (k == 0) {
      p.variant = Variant::local;
    } else {
      p.variant = Variant::mixed;
      p.s = s_values[k - 1];
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      finals[k] = run(p, cfg.grid, cfg.step).final_state;
    } catch (...) {
      errors[k] = std::current_exception();
    }
    seconds[k] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(cfg.workers, 1)), 1, jobs);
  if (workers == 1) {
    for (std::size_t k = 0; k < jobs; ++k) run_job(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < jobs; k = next++) run_job(k);
      });
    }
  }

  for (std::size_t k = 0; k < jobs; ++k) {
    if (!errors[k]) continue;
    const std::string tag =
        k == 0 ? std::string("local reference") : "s = " + format_double(s_values[k - 1]);
    const std::string prefix = "sweep run failed (" + tag + "): ";
    try {
      std::rethrow_exception(errors[k]);
    } catch (const NumericError& e) {
      throw NumericError(prefix + e.what());
    } catch (const InvariantViolation& e) {
      throw InvariantViolation(prefix + e.what());
    } catch (const std::exception& e) {
      throw Error(prefix + e.what());
    }
  }

  res.reference_runtime = seconds[0];
  for (std::size_t k = 1; k < jobs; ++k) {
    res.distances.push_back(state_distance(finals[k], finals[0], cfg.field));
    res.runtimes.push_back(seconds[k]);
  }
  return res;
}

void write_sweep_csv(const SweepResult& result, std::ostream& os) {
  os << "s,distance,wall_time_seconds\n";
  for (std::size_t k = 0; k < result.s_values.size(); ++k) {
    os << format_double(result.s_values[k]) << ',' << format_double(result.distances[k])
       << ',' << format_double(result.runtimes[k]) << '\n';
  }
  os << "1,0," << format_double(result.reference_runtime) << '\n';
}

}  // namespace gsfrac
