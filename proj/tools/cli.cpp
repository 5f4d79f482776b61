#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsfrac/config.hpp"
#include "gsfrac/error.hpp"
#include "gsfrac/integrator.hpp"
#include "gsfrac/io.hpp"
#include "gsfrac/operators.hpp"
#include "gsfrac/reactions.hpp"
#include "gsfrac/sweep.hpp"

namespace gsfrac::cli {

namespace fs = std::filesystem;

namespace {

// Flags shared by simulate and sweep. Each maps onto one config key and, when
// given, overrides the config file.
struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  int grid = 0;
  CLI::Option* grid_opt = nullptr;
  bool no_abort = false;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "key = value config file")
        ->check(CLI::ExistingFile);
    static const std::pair<const char*, const char*> table[] = {
        {"--preset", "preset"},
        {"--variant", "variant"},
        {"--s", "s"},
        {"--d1", "d1"},
        {"--d2", "d2"},
        {"--f", "f"},
        {"--kappa", "kappa"},
        {"--nx", "nx"},
        {"--ny", "ny"},
        {"--length", "length"},
        {"--dt", "dt"},
        {"--dt-max", "dt_max"},
        {"--t-end", "t_end"},
        {"--monitor-every", "monitor_every"},
        {"--snapshot-every", "snapshot_every"},
        {"--frac-refine", "frac_refine"},
        {"--ic", "ic"},
        {"--seed", "rng_seed"},
        {"--noise-amp", "noise_amp"},
        {"--out", "output_dir"},
    };
    for (const auto& [flag, key] : table) {
      auto& slot = values[key];
      options.emplace_back(key, app.add_option(flag, slot, std::string("config key ") + key));
    }
    grid_opt = app.add_option("--grid", grid, "set nx and ny together");
    app.add_flag("--no-abort", no_abort, "keep running after a hard invariant violation");
  }

  RunConfig resolve() const {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      std::stringstream ss;
      ss << is.rdbuf();
      text = ss.str();
    }
    ConfigOverrides ov;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) ov.emplace_back(key, values.at(key));
    }
    if (grid_opt->count() > 0) {
      ov.emplace_back("nx", std::to_string(grid));
      ov.emplace_back("ny", std::to_string(grid));
    }
    if (no_abort) ov.emplace_back("abort_on_violation", "false");
    return parse_config(text, ov);
  }
};

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

Field random_field(const GridSpec& g, std::mt19937_64& gen) {
  Field f(g);
  for (auto& x : f.values()) x = 2.0 * unit_uniform(gen) - 1.0;
  return f;
}

std::string snapshot_stem(std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%09lld", static_cast<long long>(step));
  return buf;
}

int do_simulate(const ConfigFlags& flags, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = flags.resolve();
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "config.txt");
    os << serialize_config(cfg);
  }
  std::ofstream inv(dir / "invariants.csv");
  write_invariant_header(inv);

  bool any_hard = false;
  OutputSinks sinks;
  sinks.report = [&](const InvariantReport& r) {
    write_invariant_row(inv, r);
    any_hard = any_hard || r.hard_violations() > 0;
  };
  sinks.snapshot = [&](const SimState& st) {
    const std::string stem = snapshot_stem(st.step_count);
    write_grid_dump(st, dir / (stem + ".gsgrid"));
    write_pgm(st.v, dir / (stem + "_v.pgm"));
  };

  RunResult res;
  try {
    res = run(cfg.params, cfg.grid(), cfg.step, sinks);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  }
  inv.flush();

  const SimState& fin = res.final_state;
  write_grid_dump(fin, dir / "final.gsgrid");
  write_pgm(fin.u, dir / "final_u.pgm");
  write_pgm(fin.v, dir / "final_v.pgm");

  const SimState init = make_initial_state(cfg.grid(), cfg.step.ic);
  out << "variant " << to_string(cfg.params.variant) << ", grid " << cfg.nx << "x" << cfg.ny
      << ", dt " << format_double(res.dt) << ", steps " << res.steps << ", t "
      << format_double(fin.t) << '\n';
  out << "final equals initial: " << (fin.u == init.u && fin.v == init.v ? "yes" : "no")
      << '\n';
  out << "reports " << res.reports.size() << ", hard violations "
      << (any_hard ? "present" : "none") << '\n';
  out << "outputs in " << dir.string() << '\n';
  return any_hard ? kInvariantViolation : kSuccess;
}

int do_sweep(const ConfigFlags& flags, const std::vector<double>& s_values,
             const std::string& field, int workers, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = flags.resolve();
  SweepConfig sc{cfg.params, cfg.grid(), cfg.step, parse_distance_field(field), workers};
  SweepResult res;
  try {
    res = run_s_sweep(sc, s_values);
  } catch (const NumericError& e) {
    err << e.what() << '\n';
    return kNumericFailure;
  } catch (const InvariantViolation& e) {
    err << e.what() << '\n';
    return kInvariantViolation;
  }
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  std::ofstream os(dir / "sweep.csv");
  write_sweep_csv(res, os);
  write_sweep_csv(res, out);
  return kSuccess;
}

int do_steady(double f, double kappa, std::ostream& out) {
  GrayScottParams p;
  p.f = f;
  p.kappa = kappa;
  const SteadyStates ss = steady_states(p);
  std::ostringstream disc;
  disc << std::setprecision(10) << ss.discriminant;
  out << "# f = " << format_double(f) << ", kappa = " << format_double(kappa) << '\n';
  out << "# discriminant = " << disc.str() << '\n';
  out << "kind,u,v\n";
  out << "trivial," << format_double(ss.trivial.u) << ',' << format_double(ss.trivial.v)
      << '\n';
  if (ss.interior.empty()) {
    out << "# interior: none\n";
  }
  for (const auto& st : ss.interior) {
    out << (ss.degenerate ? "interior_degenerate," : "interior,") << format_double(st.u)
        << ',' << format_double(st.v) << '\n';
  }
  return kSuccess;
}

// Oracle equivalence, conservation, self-adjointness and dissipativity on
// small grids.
int do_check_operators(int n, std::uint64_t seed, std::ostream& out) {
  std::mt19937_64 gen(seed);
  bool ok = true;
  auto report = [&](const std::string& name, double value, double limit) {
    const bool pass = value <= limit;
    ok = ok && pass;
    out << (pass ? "PASS " : "FAIL ") << name << " value=" << value << " limit=" << limit
        << '\n';
  };

  const std::vector<GridSpec> grids = {make_grid(n, n, 1.0), make_grid(n, n / 2 + 1, 1.0)};
  for (const auto& g : grids) {
    const std::string gname = std::to_string(g.nx) + "x" + std::to_string(g.ny);
    for (double s : {0.25, 0.5, 0.75}) {
      const FracKernel kernel(g, s);
      const std::string tag = gname + " s=" + format_double(s);
      double worst_rel = 0.0, worst_cons = 0.0, worst_adj = 0.0, worst_diss = 0.0;
      for (int trial = 0; trial < 3; ++trial) {
        const Field a = random_field(g, gen);
        const Field b = random_field(g, gen);
        const Field naive = apply_frac_naive(kernel, a);
        const Field fast = apply_frac_fast(kernel, a);
        worst_rel = std::max(worst_rel, (fast - naive).norm_inf() / naive.norm_inf());
        worst_cons = std::max(worst_cons, std::abs(integrate_field(fast)) / a.norm_inf());
        const double lab = inner(fast, b);
        const double alb = inner(a, apply_frac_fast(kernel, b));
        const double nab = std::sqrt(inner(a, a) * inner(b, b));
        worst_adj = std::max(worst_adj, std::abs(lab - alb) / nab);
        worst_diss = std::max(worst_diss, inner(fast, a) / inner(a, a));
      }
      report("frac fast~naive " + tag, worst_rel, 1e-12);
      report("frac conservation " + tag, worst_cons, 1e-10);
      report("frac self-adjoint " + tag, worst_adj, 1e-10);
      report("frac dissipative " + tag, worst_diss, 1e-10);
      report("frac constant " + tag, apply_frac_fast(kernel, fill(g, 0.7)).norm_inf(), 0.0);
    }
    double worst_cons = 0.0, worst_adj = 0.0, worst_diss = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const Field a = random_field(g, gen);
      const Field b = random_field(g, gen);
      const Field la = apply_local_laplacian(a);
      worst_cons = std::max(worst_cons, std::abs(integrate_field(la)) / a.norm_inf());
      const double nab = std::sqrt(inner(a, a) * inner(b, b));
      worst_adj = std::max(worst_adj,
                           std::abs(inner(la, b) - inner(a, apply_local_laplacian(b))) / nab);
      worst_diss = std::max(worst_diss, inner(la, a) / inner(a, a));
    }
    report("local conservation " + gname, worst_cons, 1e-10);
    report("local self-adjoint " + gname, worst_adj, 1e-10);
    report("local dissipative " + gname, worst_diss, 1e-10);
    report("local constant " + gname, apply_local_laplacian(fill(g, 0.7)).norm_inf(), 0.0);
  }
  out << (ok ? "all operator checks passed\n" : "operator checks FAILED\n");
  return ok ? kSuccess : kNumericFailure;
}

int do_bench(int n, int reps, double s, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  const GridSpec g = make_grid(n, n, 1.0);
  std::mt19937_64 gen(7);
  const Field f = random_field(g, gen);

  auto t0 = clock::now();
  const FracKernel kernel(g, s);
  const double build = std::chrono::duration<double>(clock::now() - t0).count();

  auto time_it = [&](auto&& fn) {
    const auto start = clock::now();
    for (int r = 0; r < reps; ++r) fn();
    return std::chrono::duration<double>(clock::now() - start).count() / reps;
  };
  Field sink(g);
  FracWorkspace ws(kernel);
  const double naive = time_it([&] { sink = apply_frac_naive(kernel, f); });
  const double fast = time_it([&] { apply_frac_fast(kernel, f, sink, ws); });
  const double local = time_it([&] { apply_local_laplacian(f, sink); });
  out << "grid,s,kernel_build_s,naive_s,fast_s,local_s,speedup\n";
  out << n << 'x' << n << ',' << s << ',' << build << ',' << naive << ',' << fast << ','
      << local << ',' << naive / fast << '\n';
  return kSuccess;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gray-Scott with mixed fractional/classical diffusion"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run one model, write dumps, PGMs and invariants.csv");
  ConfigFlags sim_flags;
  sim_flags.attach(*sim);

  auto* sweep = app.add_subcommand("sweep", "compare mixed runs over s against the local model");
  ConfigFlags sweep_flags;
  sweep_flags.attach(*sweep);
  std::vector<double> s_values{0.25, 0.5, 0.75};
  std::string field = "v";
  int workers = 1;
  sweep->add_option("--s-values", s_values, "fractional orders")->delimiter(',');
  sweep->add_option("--field", field, "u, v or uv")->check(CLI::IsMember({"u", "v", "uv"}));
  sweep->add_option("--workers", workers, "parallel runs")->check(CLI::PositiveNumber);

  auto* steady = app.add_subcommand("steady", "print the kinetic steady states");
  double f = 0.04, kappa = 0.0636;
  steady->add_option("--f", f, "feed rate");
  steady->add_option("--kappa", kappa, "kill rate");

  auto* check = app.add_subcommand("check-operators", "operator oracle and conservation suite");
  int check_grid = 16;
  std::uint64_t check_seed = 2024;
  check->add_option("--grid", check_grid, "cells per side")->check(CLI::Range(4, 128));
  check->add_option("--seed", check_seed, "random field seed");

  auto* bench = app.add_subcommand("bench", "time naive vs fast fractional operator");
  int bench_grid = 64, bench_reps = 3;
  double bench_s = 0.5;
  bench->add_option("--grid", bench_grid, "cells per side")->check(CLI::Range(2, 4096));
  bench->add_option("--reps", bench_reps, "repetitions")->check(CLI::PositiveNumber);
  bench->add_option("--s", bench_s, "fractional order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*sim) return do_simulate(sim_flags, out, err);
    if (*sweep) return do_sweep(sweep_flags, s_values, field, workers, out, err);
    if (*steady) return do_steady(f, kappa, out);
    if (*check) return do_check_operators(check_grid, check_seed, out);
    if (*bench) return do_bench(bench_grid, bench_reps, bench_s, out);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace gsfrac::cli
