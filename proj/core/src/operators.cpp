#include "gsfrac/operators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>

#include "gsfrac/error.hpp"

namespace gsfrac {

namespace {

// The FFTW planner and plan destruction are not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using RealBuf = std::unique_ptr<double[], FftwFree>;
using ComplexBuf = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuf alloc_real(std::size_t n) {
  auto* p = fftw_alloc_real(n);
  if (!p) throw std::bad_alloc();
  return RealBuf(p);
}

ComplexBuf alloc_complex(std::size_t n) {
  auto* p = fftw_alloc_complex(n);
  if (!p) throw std::bad_alloc();
  return ComplexBuf(p);
}

void check_order(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw InvalidArgument("fractional order s must lie in (0, 1), got " +
                          std::to_string(s));
  }
}

}  // namespace

double riesz_constant(int n, double s) {
  if (n < 1) throw InvalidArgument("dimension n must be >= 1");
  check_order(s);
  const double half_n = 0.5 * n;
  return std::pow(4.0, s) * std::tgamma(half_n + s) /
         (std::pow(std::numbers::pi, half_n) * std::tgamma(-s));
}

// Padded FFT geometry, the kernel's transfer function and the two plans.
struct FracKernel::Spectral {
  int px = 0;
  int py = 0;
  std::size_t real_size = 0;
  std::size_t complex_size = 0;
  ComplexBuf transfer;  // already scaled by 1 / (px * py)
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Spectral() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

struct FracWorkspace::Buffers {
  RealBuf real;
  ComplexBuf spectrum;
};

FracKernel::FracKernel(const GridSpec& grid, double s, int near_refine)
    : grid_(grid), s_(s), near_refine_(near_refine) {
  check_order(s);
  if (near_refine < 1) throw InvalidArgument("near_refine must be >= 1");
  if (grid.nx < 2 || grid.ny < 2 || !(grid.h > 0.0)) {
    throw InvalidArgument("kernel needs a valid grid");
  }
  c_norm_ = std::abs(riesz_constant(2, s));

  const int nx = grid.nx;
  const int ny = grid.ny;
  const std::size_t wx = 2 * static_cast<std::size_t>(nx) - 1;
  wy_ = 2 * static_cast<std::size_t>(ny) - 1;
  weights_.assign(wx * wy_, 0.0);

  const double h = grid.h;
  const double scale = c_norm_ * std::pow(h, -2.0 * s);
  const double expo = -1.0 - s;  // (r^2)^(-1-s) = r^(-2-2s)
  // Sub-cell midpoint sum over a neighbouring cell, in units of h. Computed
  // for the canonical offsets (1, 0) and (1, 1) only, so the refined weights
  // keep the reflection and transpose symmetry exactly.
  auto refined = [&](int a, int b) {
    const int m = near_refine;
    double acc = 0.0;
    for (int p = 0; p < m; ++p) {
      const double zx = a - 0.5 + (p + 0.5) / m;
      for (int q = 0; q < m; ++q) {
        const double zy = b - 0.5 + (q + 0.5) / m;
        acc += std::pow(zx * zx + zy * zy, expo);
      }
    }
    return scale * acc / (static_cast<double>(m) * m);
  };
  const double w_edge = near_refine > 1 ? refined(1, 0) : 0.0;
  const double w_corner = near_refine > 1 ? refined(1, 1) : 0.0;

  for (int di = -(nx - 1); di <= nx - 1; ++di) {
    for (int dj = -(ny - 1); dj <= ny - 1; ++dj) {
      if (di == 0 && dj == 0) continue;
      double w;
      if (near_refine > 1 && std::abs(di) <= 1 && std::abs(dj) <= 1) {
        w = (di != 0 && dj != 0) ? w_corner : w_edge;
      } else {
        const double r2 = static_cast<double>(di) * di + static_cast<double>(dj) * dj;
        w = scale * std::pow(r2, expo);
      }
      weights_[static_cast<std::size_t>(di + nx - 1) * wy_ +
               static_cast<std::size_t>(dj + ny - 1)] = w;
    }
  }

  // diag(i, j) is a rectangle sum of the weight table; use a summed-area
  // table in extended precision.
  std::vector<long double> sat((wx + 1) * (wy_ + 1), 0.0L);
  auto at = [&](std::size_t a, std::size_t b) -> long double& {
    return sat[a * (wy_ + 1) + b];
  };
  for (std::size_t a = 0; a < wx; ++a) {
    long double row = 0.0L;
    for (std::size_t b = 0; b < wy_; ++b) {
      row += weights_[a * wy_ + b];
      at(a + 1, b + 1) = at(a, b + 1) + row;
    }
  }
  diag_.resize(grid.size());
  for (int i = 0; i < nx; ++i) {
    const std::size_t a0 = static_cast<std::size_t>(nx - 1 - i);
    const std::size_t a1 = a0 + static_cast<std::size_t>(nx);
    for (int j = 0; j < ny; ++j) {
      const std::size_t b0 = static_cast<std::size_t>(ny - 1 - j);
      const std::size_t b1 = b0 + static_cast<std::size_t>(ny);
      const long double sum = at(a1, b1) - at(a0, b1) - at(a1, b0) + at(a0, b0);
      diag_[grid.index(i, j)] = static_cast<double>(sum);
    }
  }
  max_diag_ = *std::max_element(diag_.begin(), diag_.end());

  // Transfer function of the zero-padded linear convolution. Since w is
  // even, correlation and convolution coincide.
  auto sp = std::make_unique<Spectral>();
  sp->px = 2 * nx;
  sp->py = 2 * ny;
  sp->real_size = static_cast<std::size_t>(sp->px) * sp->py;
  sp->complex_size = static_cast<std::size_t>(sp->px) * (sp->py / 2 + 1);
  RealBuf real = alloc_real(sp->real_size);
  sp->transfer = alloc_complex(sp->complex_size);
  {
    std::lock_guard lock(planner_mutex());
    sp->forward = fftw_plan_dft_r2c_2d(sp->px, sp->py, real.get(),
                                       sp->transfer.get(), FFTW_ESTIMATE);
    sp->backward = fftw_plan_dft_c2r_2d(sp->px, sp->py, sp->transfer.get(),
                                        real.get(), FFTW_ESTIMATE);
  }
  if (!sp->forward || !sp->backward) throw Error("FFTW planning failed");

  std::fill_n(real.get(), sp->real_size, 0.0);
  for (int di = -(nx - 1); di <= nx - 1; ++di) {
    const int a = (di + sp->px) % sp->px;
    for (int dj = -(ny - 1); dj <= ny - 1; ++dj) {
      const int b = (dj + sp->py) % sp->py;
      real[static_cast<std::size_t>(a) * sp->py + b] = weight(di, dj);
    }
  }
  fftw_execute_dft_r2c(sp->forward, real.get(), sp->transfer.get());
  const double norm = 1.0 / static_cast<double>(sp->real_size);
  for (std::size_t k = 0; k < sp->complex_size; ++k) {
    sp->transfer[k][0] *= norm;
    sp->transfer[k][1] *= norm;
  }
  spectral_ = std::move(sp);
}

FracKernel::~FracKernel() = default;
FracKernel::FracKernel(FracKernel&&) noexcept = default;
FracKernel& FracKernel::operator=(FracKernel&&) noexcept = default;

FracKernel build_frac_kernel(const GridSpec& grid, double s, int near_refine) {
  return FracKernel(grid, s, near_refine);
}

FracWorkspace::FracWorkspace(const FracKernel& kernel)
    : buf_(std::make_unique<Buffers>()) {
  buf_->real = alloc_real(kernel.spectral_->real_size);
  buf_->spectrum = alloc_complex(kernel.spectral_->complex_size);
}

FracWorkspace::~FracWorkspace() = default;
FracWorkspace::FracWorkspace(FracWorkspace&&) noexcept = default;
FracWorkspace& FracWorkspace::operator=(FracWorkspace&&) noexcept = default;

Field apply_frac_naive(const FracKernel& kernel, const Field& f) {
  const GridSpec& g = kernel.grid();
  if (!(f.grid() == g)) throw GridMismatch("apply_frac_naive: field/kernel grid mismatch");
  Field out(g);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double fx = f(i, j);
      double acc = 0.0;
      for (int k = 0; k < g.nx; ++k) {
        for (int l = 0; l < g.ny; ++l) {
          if (k == i && l == j) continue;
          acc += kernel.weight(k - i, l - j) * (f(k, l) - fx);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

void apply_frac_fast(const FracKernel& kernel, const Field& f, Field& out,
                     FracWorkspace& ws) {
  const GridSpec& g = kernel.grid();
  if (!(f.grid() == g)) throw GridMismatch("apply_frac_fast: field/kernel grid mismatch");
  if (!(out.grid() == g)) out = Field(g);
  const auto& sp = *kernel.spectral_;
  double* real = ws.buf_->real.get();
  fftw_complex* spec = ws.buf_->spectrum.get();

  const double ref = f[0];
  std::fill_n(real, sp.real_size, 0.0);
  for (int i = 0; i < g.nx; ++i) {
    double* row = real + static_cast<std::size_t>(i) * sp.py;
    for (int j = 0; j < g.ny; ++j) row[j] = f(i, j) - ref;
  }
  fftw_execute_dft_r2c(sp.forward, real, spec);
  for (std::size_t k = 0; k < sp.complex_size; ++k) {
    const double re = spec[k][0] * sp.transfer[k][0] - spec[k][1] * sp.transfer[k][1];
    const double im = spec[k][0] * sp.transfer[k][1] + spec[k][1] * sp.transfer[k][0];
    spec[k][0] = re;
    spec[k][1] = im;
  }
  fftw_execute_dft_c2r(sp.backward, spec, real);
  for (int i = 0; i < g.nx; ++i) {
    const double* row = real + static_cast<std::size_t>(i) * sp.py;
    for (int j = 0; j < g.ny; ++j) {
      out(i, j) = row[j] - kernel.diag(i, j) * (f(i, j) - ref);
    }
  }
}

Field apply_frac_fast(const FracKernel& kernel, const Field& f) {
  FracWorkspace ws(kernel);
  Field out(kernel.grid());
  apply_frac_fast(kernel, f, out, ws);
  return out;
}

void apply_local_laplacian(const Field& f, Field& out, bool neumann) {
  const GridSpec& g = f.grid();
  if (!(out.grid() == g)) out = Field(g);
  const double inv_h2 = 1.0 / (g.h * g.h);
  const int nx = g.nx;
  const int ny = g.ny;
  for (int i = 0; i < nx; ++i) {
    int im = i - 1;
    int ip = i + 1;
    if (neumann) {
      im = std::max(im, 0);
      ip = std::min(ip, nx - 1);
    } else {
      im = (im + nx) % nx;
      ip = ip % nx;
    }
    for (int j = 0; j < ny; ++j) {
      int jm = j - 1;
      int jp = j + 1;
      if (neumann) {
        jm = std::max(jm, 0);
        jp = std::min(jp, ny - 1);
      } else {
        jm = (jm + ny) % ny;
        jp = jp % ny;
      }
      // Differences first, so constants map to exactly zero.
      const double c = f(i, j);
      out(i, j) = ((f(ip, j) - c) + (f(im, j) - c) + (f(i, jp) - c) + (f(i, jm) - c)) *
                  inv_h2;
    }
  }
}

Field apply_local_laplacian(const Field& f, bool neumann) {
  Field out(f.grid());
  apply_local_laplacian(f, out, neumann);
  return out;
}

void write_kernel_csv(const FracKernel& kernel, std::ostream& os) {
  const GridSpec& g = kernel.grid();
  const auto old_precision = os.precision(17);
  os << "di,dj,weight\n";
  for (int di = -(g.nx - 1); di <= g.nx - 1; ++di) {
    for (int dj = -(g.ny - 1); dj <= g.ny - 1; ++dj) {
      if (di == 0 && dj == 0) continue;
      os << di << ',' << dj << ',' << kernel.weight(di, dj) << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace gsfrac
