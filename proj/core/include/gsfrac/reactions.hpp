#pragma once

#include <string_view>
#include <vector>

namespace gsfrac {

enum class Variant {
  local,  // Neumann Laplacian for both species
  mixed,  // regional fractional Laplacian for u, Neumann Laplacian for v
};

std::string_view to_string(Variant v) noexcept;
/// Throws InvalidArgument for anything but "local" / "mixed".
Variant parse_variant(std::string_view text);

struct GrayScottParams {
  double d1 = 1.0;
  double d2 = 0.5;
  double f = 0.04;
  double kappa = 0.0636;
  double s = 0.5;
  Variant variant = Variant::mixed;
  // Test hook: when false the step applies diffusion only.
  bool reactions = true;
};

/// Throws InvalidArgument on d1, d2 <= 0, d1 == d2, negative f or kappa,
/// non-finite values, or s outside (0, 1) for the mixed variant.
void validate(const GrayScottParams& p);

/// -u v^2 + f (1 - u)
inline double g1(double u, double v, const GrayScottParams& p) noexcept {
  return -u * v * v + p.f * (1.0 - u);
}

/// u v^2 - (f + kappa) v
inline double g2(double u, double v, const GrayScottParams& p) noexcept {
  return u * v * v - (p.f + p.kappa) * v;
}

struct SteadyState {
  double u = 0.0;
  double v = 0.0;
};

struct SteadyStates {
  SteadyState trivial{1.0, 0.0};
  /// Empty, one (degenerate double root) or two pairs, larger u first.
  std::vector<SteadyState> interior;
  /// 1 - 4 (f + kappa)^2 / f; -inf when f = 0.
  double discriminant = 0.0;
  bool degenerate = false;
};

/// Equilibria of the kinetics. The trivial state (1, 0) is always present;
/// the interior pair u = (1 +- sqrt(D)) / 2, v = f (1 -+ sqrt(D)) / (2 (f + kappa))
/// exists when D >= 0. Throws InvalidArgument for f < 0 or kappa < 0, and
/// Error if a returned pair fails the substitution check |g1|, |g2| <= 1e-12.
SteadyStates steady_states(const GrayScottParams& p);

/// Samples g1(0, v) and g2(u, 0) on `samples` evenly spaced points of [0, 10]
/// and reports whether all are nonnegative. Throws InvalidArgument for
/// samples < 1.
bool check_quasi_positivity(const GrayScottParams& p, int samples);

}  // namespace gsfrac
