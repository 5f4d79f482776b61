#include "gsfrac/reactions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gsfrac/error.hpp"

namespace gsfrac {

std::string_view to_string(Variant v) noexcept {
  return v == Variant::local ? "local" : "mixed";
}

Variant parse_variant(std::string_view text) {
  if (text == "local") return Variant::local;
  if (text == "mixed") return Variant::mixed;
  throw InvalidArgument("unknown variant '" + std::string(text) +
                        "' (expected local or mixed)");
}

void validate(const GrayScottParams& p) {
  for (double x : {p.d1, p.d2, p.f, p.kappa, p.s}) {
    if (!std::isfinite(x)) throw InvalidArgument("parameters must be finite");
  }
  if (!(p.d1 > 0.0) || !(p.d2 > 0.0)) {
    throw InvalidArgument("diffusion coefficients d1, d2 must be positive");
  }
  if (p.d1 == p.d2) throw InvalidArgument("d1 and d2 must differ");
  if (p.f < 0.0) throw InvalidArgument("feed rate f must be >= 0");
  if (p.kappa < 0.0) throw InvalidArgument("kill rate kappa must be >= 0");
  if (p.variant == Variant::mixed && !(p.s > 0.0 && p.s < 1.0)) {
    throw InvalidArgument("s out of (0,1) for mixed variant: " + std::to_string(p.s));
  }
}

SteadyStates steady_states(const GrayScottParams& p) {
  if (p.f < 0.0 || p.kappa < 0.0) {
    throw InvalidArgument("steady_states needs f >= 0 and kappa >= 0");
  }
  SteadyStates out;
  if (p.f == 0.0) {
    out.discriminant = -std::numeric_limits<double>::infinity();
    return out;
  }
  const double fk = p.f + p.kappa;
  out.discriminant = 1.0 - 4.0 * fk * fk / p.f;
  if (out.discriminant < 0.0) return out;

  const double root = std::sqrt(out.discriminant);
  const double vscale = p.f / (2.0 * fk);
  out.interior.push_back({0.5 * (1.0 + root), vscale * (1.0 - root)});
  if (out.discriminant == 0.0) {
    out.degenerate = true;
  } else {
    out.interior.push_back({0.5 * (1.0 - root), vscale * (1.0 + root)});
  }
  for (const auto& st : out.interior) {
    if (std::abs(g1(st.u, st.v, p)) > 1e-12 || std::abs(g2(st.u, st.v, p)) > 1e-12) {
      throw Error("steady state failed substitution check");
    }
  }
  return out;
}

bool check_quasi_positivity(const GrayScottParams& p, int samples) {
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  constexpr double hi = 10.0;
  for (int k = 0; k < samples; ++k) {
    const double x = samples == 1 ? 0.0 : hi * k / (samples - 1);
    if (g1(0.0, x, p) < 0.0 || g2(x, 0.0, p) < 0.0) return false;
  }
  return true;
}

}  // namespace gsfrac
