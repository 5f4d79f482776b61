#pragma once

#include <string>
#include <vector>

#include "gsfrac/grid.hpp"
#include "gsfrac/reactions.hpp"

namespace gsfrac {

enum class Severity { soft, hard };

struct Violation {
  std::string name;  // "nonneg_u", "nonneg_v", "sup_u", "mass"
  double measured = 0.0;
  double bound = 0.0;
  Severity severity = Severity::hard;
};

struct MonitorTolerances {
  double nonneg = 1e-10;  // absolute
  double sup = 1e-8;      // absolute
  double mass = 1e-6;     // relative
};

/// A-priori bounds fixed from the initial state:
///   sup  = max(||u0||_inf, 1)
///   mass = max(|Omega| / min(kappa, 1), integral of u0 + v0)
/// mass is +inf when kappa = 0.
struct Bounds {
  double sup = 1.0;
  double mass = 0.0;
};

Bounds compute_bounds(const SimState& initial, const GrayScottParams& p);

struct InvariantReport {
  double t = 0.0;
  double min_u = 0.0;
  double min_v = 0.0;
  double max_u = 0.0;
  double max_v = 0.0;
  double mass = 0.0;
  double sup_bound = 0.0;
  double mass_bound = 0.0;
  std::vector<Violation> violations;

  int hard_violations() const;
  friend bool operator==(const InvariantReport&, const InvariantReport&);
};

bool operator==(const Violation& a, const Violation& b);

/// Cells with u or v below zero. Soft if within `tol` of zero, hard beyond.
/// `report`, when given, receives min_u and min_v.
std::vector<Violation> check_nonnegativity(const SimState& state, double tol,
                                           InvariantReport* report = nullptr);

/// max u against report.sup_bound. Also fills report.max_u.
std::vector<Violation> check_sup_bound(const SimState& state, InvariantReport& report,
                                       double tol);

/// h^2 sum(u + v) against report.mass_bound, relative tolerance. Also fills
/// report.mass.
std::vector<Violation> check_mass_bound(const SimState& state, InvariantReport& report,
                                        double tol);

/// All three checks plus max_v bookkeeping.
InvariantReport monitor(const SimState& state, const Bounds& bounds,
                        const MonitorTolerances& tol = {});

}  // namespace gsfrac
