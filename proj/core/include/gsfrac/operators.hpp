#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "gsfrac/grid.hpp"

namespace gsfrac {

/// Signed normalization constant of the Riesz kernel in n dimensions,
///
///   C_{n,s} = 4^s Gamma(n/2 + s) / (pi^{n/2} Gamma(-s)),
///
/// which is negative on 0 < s < 1 because Gamma(-s) < 0 there. The
/// fractional operator below uses |C_{n,s}|. Throws InvalidArgument for
/// n < 1 or s outside (0, 1).
double riesz_constant(int n, double s);

class FracWorkspace;

/// Precomputed quadrature for the regional fractional Laplacian on one grid.
///
/// The operator is
///
///   (L f)(x) = sum_{y in Omega, y != x} w(y - x) (f(y) - f(x)),
///   w(d) = |C_{2,s}| h^2 / (|d| h)^{2+2s},
///
/// i.e. a midpoint rule on the cell grid with the singular cell omitted. Only
/// values inside the domain are referenced, so the nonlocal Neumann condition
/// holds without any exterior layer. The sign is chosen so that L is
/// dissipative (L f = 0 on constants, <L f, f> <= 0).
///
/// `near_refine > 1` replaces the midpoint value for the eight cells touching
/// the singular one with an m x m sub-cell midpoint sum. The default 1 is the
/// plain midpoint rule.
///
/// The kernel also owns the FFT plans used by the fast path. It is movable,
/// not copyable, and safe to share read-only across threads as long as each
/// thread uses its own FracWorkspace.
class FracKernel {
 public:
  FracKernel(const GridSpec& grid, double s, int near_refine = 1);
  ~FracKernel();
  FracKernel(FracKernel&&) noexcept;
  FracKernel& operator=(FracKernel&&) noexcept;
  FracKernel(const FracKernel&) = delete;
  FracKernel& operator=(const FracKernel&) = delete;

  const GridSpec& grid() const noexcept { return grid_; }
  double s() const noexcept { return s_; }
  int near_refine() const noexcept { return near_refine_; }
  /// |C_{2,s}|
  double c_norm() const noexcept { return c_norm_; }

  /// Weight for displacement (di, dj); |di| < nx, |dj| < ny. Zero at (0, 0).
  double weight(int di, int dj) const noexcept {
    return weights_[static_cast<std::size_t>(di + grid_.nx - 1) * wy_ +
                    static_cast<std::size_t>(dj + grid_.ny - 1)];
  }
  /// Row sum of the weights over in-domain partners, per cell.
  std::span<const double> diag() const noexcept { return diag_; }
  double diag(int i, int j) const noexcept { return diag_[grid_.index(i, j)]; }
  double max_diag() const noexcept { return max_diag_; }

 private:
  friend class FracWorkspace;
  friend void apply_frac_fast(const FracKernel&, const Field&, Field&,
                              FracWorkspace&);
  struct Spectral;

  GridSpec grid_;
  double s_;
  int near_refine_;
  double c_norm_;
  std::size_t wy_;  // 2 * ny - 1
  std::vector<double> weights_;
  std::vector<double> diag_;
  double max_diag_ = 0.0;
  std::unique_ptr<Spectral> spectral_;
};

/// Same as constructing a FracKernel; throws InvalidArgument for s outside
/// (0, 1) or near_refine < 1.
FracKernel build_frac_kernel(const GridSpec& grid, double s, int near_refine = 1);

/// Scratch buffers for the FFT path. One per thread.
class FracWorkspace {
 public:
  explicit FracWorkspace(const FracKernel& kernel);
  ~FracWorkspace();
  FracWorkspace(FracWorkspace&&) noexcept;
  FracWorkspace& operator=(FracWorkspace&&) noexcept;
  FracWorkspace(const FracWorkspace&) = delete;
  FracWorkspace& operator=(const FracWorkspace&) = delete;

 private:
  friend void apply_frac_fast(const FracKernel&, const Field&, Field&,
                              FracWorkspace&);
  struct Buffers;
  std::unique_ptr<Buffers> buf_;
};

/// Direct O(N^2) double sum over all cell pairs. Reference implementation.
Field apply_frac_naive(const FracKernel& kernel, const Field& f);

/// (w * f)(x) - diag(x) f(x) with the correlation done by zero-padded FFT.
/// The input is shifted by f[0] first, so a constant field yields exactly
/// zero.
Field apply_frac_fast(const FracKernel& kernel, const Field& f);
void apply_frac_fast(const FracKernel& kernel, const Field& f, Field& out,
                     FracWorkspace& ws);

/// 5-point Laplacian. With `neumann` the ghost value outside each boundary
/// face equals the adjacent interior value (zero flux); otherwise the grid
/// wraps periodically.
Field apply_local_laplacian(const Field& f, bool neumann = true);
void apply_local_laplacian(const Field& f, Field& out, bool neumann = true);

/// CSV dump of the weight table: header `di,dj,weight`, one row per stored
/// displacement (the zero displacement excluded), di-major.
void write_kernel_csv(const FracKernel& kernel, std::ostream& os);

}  // namespace gsfrac
