#include "gsfrac/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gsfrac {

Bounds compute_bounds(const SimState& initial, const GrayScottParams& p) {
  Bounds b;
  b.sup = std::max(initial.u.norm_inf(), 1.0);
  const double kappa_tilde = std::min(p.kappa, 1.0);
  const double initial_mass = integrate_field(initial.u) + integrate_field(initial.v);
  const double decay_limit = kappa_tilde > 0.0
                                 ? initial.grid().area() / kappa_tilde
                                 : std::numeric_limits<double>::infinity();
  b.mass = std::max(decay_limit, initial_mass);
  return b;
}

int InvariantReport::hard_violations() const {
  return static_cast<int>(std::count_if(
      violations.begin(), violations.end(),
      [](const Violation& v) { return v.severity == Severity::hard; }));
}

bool operator==(const Violation& a, const Violation& b) {
  return a.name == b.name && a.measured == b.measured && a.bound == b.bound &&
         a.severity == b.severity;
}

bool operator==(const InvariantReport& a, const InvariantReport& b) {
  return a.t == b.t && a.min_u == b.min_u && a.min_v == b.min_v &&
         a.max_u == b.max_u && a.max_v == b.max_v && a.mass == b.mass &&
         a.sup_bound == b.sup_bound && a.mass_bound == b.mass_bound &&
         a.violations == b.violations;
}

std::vector<Violation> check_nonnegativity(const SimState& state, double tol,
                                           InvariantReport* report) {
  std::vector<Violation> out;
  const double min_u = state.u.min();
  const double min_v = state.v.min();
  if (report) {
    report->min_u = min_u;
    report->min_v = min_v;
  }
  auto flag = [&](const char* name, double m) {
    if (m < 0.0) {
      out.push_back({name, m, 0.0, m < -tol ? Severity::hard : Severity::soft});
    }
  };
  flag("nonneg_u", min_u);
  flag("nonneg_v", min_v);
  return out;
}

std::vector<Violation> check_sup_bound(const SimState& state, InvariantReport& report,
                                       double tol) {
  report.max_u = state.u.max();
  if (report.max_u <= report.sup_bound) return {};
  const auto sev = report.max_u > report.sup_bound + tol ? Severity::hard : Severity::soft;
  return {{"sup_u", report.max_u, report.sup_bound, sev}};
}

std::vector<Violation> check_mass_bound(const SimState& state, InvariantReport& report,
                                        double tol) {
  report.mass = integrate_field(state.u) + integrate_field(state.v);
  if (report.mass <= report.mass_bound) return {};
  const auto sev =
      report.mass > report.mass_bound * (1.0 + tol) ? Severity::hard : Severity::soft;
  return {{"mass", report.mass, report.mass_bound, sev}};
}

InvariantReport monitor(const SimState& state, const Bounds& bounds,
                        const MonitorTolerances& tol) {
  InvariantReport r;
  r.t = state.t;
  r.sup_bound = bounds.sup;
  r.mass_bound = bounds.mass;
  r.max_v = state.v.max();
  auto append = [&](std::vector<Violation> v) {
    r.violations.insert(r.violations.end(), v.begin(), v.end());
  };
  append(check_nonnegativity(state, tol.nonneg, &r));
  append(check_sup_bound(state, r, tol.sup));
  append(check_mass_bound(state, r, tol.mass));
  return r;
}

}  // namespace gsfrac
