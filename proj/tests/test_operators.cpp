#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "gsfrac/error.hpp"
#include "gsfrac/operators.hpp"
#include "test_support.hpp"

namespace gsfrac {
namespace {

using testing::brute_diag;
using testing::brute_weight;
using testing::random_field;

// Gamma(1.5) = sqrt(pi)/2 and Gamma(-0.5) = -2 sqrt(pi) give
// C_{2,1/2} = 2 (sqrt(pi)/2) / (pi (-2 sqrt(pi))) = -1/(2 pi).
TEST(RieszConstant, ClosedFormTwoDimHalf) {
  const double expected = -1.0 / (2.0 * std::numbers::pi);
  EXPECT_NEAR(riesz_constant(2, 0.5), expected, 1e-12 * std::abs(expected));
}

// Gamma(1) = 1: C_{1,1/2} = 2 / (sqrt(pi) (-2 sqrt(pi))) = -1/pi.
TEST(RieszConstant, ClosedFormOneDimHalf) {
  EXPECT_NEAR(riesz_constant(1, 0.5), -1.0 / std::numbers::pi, 1e-12 / std::numbers::pi);
}

TEST(RieszConstant, NegativeOnOpenUnitInterval) {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 9; ++k) {
      EXPECT_LT(riesz_constant(n, 0.1 * k), 0.0) << "n=" << n << " s=" << 0.1 * k;
    }
  }
}

TEST(RieszConstant, MagnitudeMatchesLogGammaRoute) {
  for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double ref = testing::brute_c_norm_2d(s);
    EXPECT_NEAR(std::abs(riesz_constant(2, s)), ref, 1e-12 * ref) << "s=" << s;
  }
}

TEST(RieszConstant, ContinuousAcrossHalf) {
  // One-sided difference quotients from left and right agree, so no jump.
  const double c0 = riesz_constant(2, 0.5);
  for (double eps : {1e-4, 1e-5}) {
    const double right = (riesz_constant(2, 0.5 + eps) - c0) / eps;
    const double left = (c0 - riesz_constant(2, 0.5 - eps)) / eps;
    EXPECT_NEAR(right, left, 1e-3 * std::abs(right));
  }
}

TEST(RieszConstant, RejectsOutOfRange) {
  EXPECT_THROW(riesz_constant(2, 0.0), InvalidArgument);
  EXPECT_THROW(riesz_constant(2, 1.0), InvalidArgument);
  EXPECT_THROW(riesz_constant(2, -0.2), InvalidArgument);
  EXPECT_THROW(riesz_constant(0, 0.5), InvalidArgument);
}

TEST(FracKernel, RejectsBadOrder) {
  const auto g = make_grid(4, 4, 1.0);
  EXPECT_THROW(build_frac_kernel(g, 0.0), InvalidArgument);
  EXPECT_THROW(build_frac_kernel(g, 1.0), InvalidArgument);
  EXPECT_THROW(build_frac_kernel(g, 0.5, 0), InvalidArgument);
}

TEST(FracKernel, WeightsMatchDefinitionAndAreSymmetric) {
  const auto g = make_grid(9, 6, 1.0);
  for (double s : {0.25, 0.5, 0.75}) {
    const auto k = build_frac_kernel(g, s);
    EXPECT_NEAR(k.c_norm(), std::abs(riesz_constant(2, s)), 1e-15);
    EXPECT_EQ(k.weight(0, 0), 0.0);
    for (int di = -(g.nx - 1); di < g.nx; ++di) {
      for (int dj = -(g.ny - 1); dj < g.ny; ++dj) {
        if (di == 0 && dj == 0) continue;
        const double w = k.weight(di, dj);
        ASSERT_GT(w, 0.0);
        ASSERT_EQ(w, k.weight(-di, -dj));
        const double ref = brute_weight(di, dj, g.h, s);
        ASSERT_NEAR(w, ref, 1e-13 * ref) << di << "," << dj;
      }
    }
  }
}

TEST(FracKernel, PowerLawRatio) {
  const auto g = make_grid(8, 8, 1.0);
  EXPECT_NEAR(build_frac_kernel(g, 0.5).weight(1, 0) / build_frac_kernel(g, 0.5).weight(2, 0),
              8.0, 1e-13);
  for (double s : {0.25, 0.75}) {
    const auto k = build_frac_kernel(g, s);
    EXPECT_NEAR(k.weight(1, 0) / k.weight(2, 0), std::pow(2.0, 2.0 + 2.0 * s), 1e-12);
  }
}

TEST(FracKernel, DiagMatchesBruteForceSums) {
  for (const auto& g : {make_grid(4, 4, 1.0), make_grid(8, 8, 1.0), make_grid(7, 5, 2.0)}) {
    for (double s : {0.25, 0.5, 0.75}) {
      const auto k = build_frac_kernel(g, s);
      double maxd = 0.0;
      for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
          const double ref = brute_diag(g, s, i, j);
          EXPECT_NEAR(k.diag(i, j), ref, 1e-13 * ref);
          maxd = std::max(maxd, k.diag(i, j));
        }
      }
      EXPECT_EQ(k.max_diag(), maxd);
    }
  }
}

TEST(FracKernel, CornerSeesLessThanCenter) {
  const auto g = make_grid(4, 4, 1.0);
  const auto k = build_frac_kernel(g, 0.5);
  EXPECT_LT(k.diag(0, 0), k.diag(1, 1));
  EXPECT_LT(brute_diag(g, 0.5, 0, 0), brute_diag(g, 0.5, 1, 1));
}

TEST(FracKernel, NearRefinementTouchesOnlyNeighbours) {
  const auto g = make_grid(6, 6, 1.0);
  const auto plain = build_frac_kernel(g, 0.5);
  const auto refined = build_frac_kernel(g, 0.5, 8);
  for (int di = -5; di <= 5; ++di) {
    for (int dj = -5; dj <= 5; ++dj) {
      if (di == 0 && dj == 0) continue;
      EXPECT_EQ(refined.weight(di, dj), refined.weight(-di, dj));
      EXPECT_EQ(refined.weight(di, dj), refined.weight(dj, di));
      if (std::max(std::abs(di), std::abs(dj)) > 1) {
        EXPECT_EQ(refined.weight(di, dj), plain.weight(di, dj));
      } else {
        // The kernel is convex along the cell, so the cell average exceeds
        // the midpoint value.
        EXPECT_GT(refined.weight(di, dj), plain.weight(di, dj));
      }
    }
  }
}

TEST(FracKernel, NearRefinementConverges) {
  const auto g = make_grid(4, 4, 1.0);
  const double w64 = build_frac_kernel(g, 0.5, 64).weight(1, 0);
  const double w128 = build_frac_kernel(g, 0.5, 128).weight(1, 0);
  EXPECT_NEAR(w64, w128, 1e-3 * w128);
}

TEST(ApplyFracNaive, ConstantFieldIsZero) {
  const auto g = make_grid(8, 8, 1.0);
  const auto k = build_frac_kernel(g, 0.5);
  const auto out = apply_frac_naive(k, fill(g, 3.25));
  for (double x : out.values()) EXPECT_EQ(x, 0.0);
}

TEST(ApplyFracNaive, IndicatorExpansion) {
  const auto g = make_grid(6, 5, 1.0);
  const auto k = build_frac_kernel(g, 0.75);
  Field f(g);
  const int hi = 2, hj = 3;
  f(hi, hj) = 1.0;
  const auto out = apply_frac_naive(k, f);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      if (i == hi && j == hj) {
        EXPECT_NEAR(out(i, j), -k.diag(hi, hj), 1e-13 * k.diag(hi, hj));
      } else {
        EXPECT_NEAR(out(i, j), brute_weight(hi - i, hj - j, g.h, 0.75),
                    1e-13 * out(i, j));
        EXPECT_GE(out(i, j), 0.0);
      }
    }
  }
}

TEST(ApplyFracNaive, ConservesRandomFields) {
  std::mt19937_64 gen(21);
  const auto g = make_grid(16, 16, 1.0);
  const auto k = build_frac_kernel(g, 0.5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto out = apply_frac_naive(k, random_field(g, gen));
    double abs_sum = 0.0;
    for (double x : out.values()) abs_sum += std::abs(x);
    EXPECT_LE(std::abs(integrate_field(out)), 1e-12 * abs_sum * g.cell_area());
  }
}

TEST(ApplyFracNaive, GridMismatch) {
  const auto k = build_frac_kernel(make_grid(4, 4, 1.0), 0.5);
  EXPECT_THROW(apply_frac_naive(k, Field(make_grid(4, 5, 1.0))), GridMismatch);
  EXPECT_THROW(apply_frac_fast(k, Field(make_grid(5, 4, 1.0))), GridMismatch);
}

TEST(ApplyFracFast, MatchesNaiveOnRandomField) {
  std::mt19937_64 gen(22);
  const auto g = make_grid(16, 16, 1.0);
  const auto k = build_frac_kernel(g, 0.5);
  const auto f = random_field(g, gen);
  const auto naive = apply_frac_naive(k, f);
  EXPECT_LE((apply_frac_fast(k, f) - naive).norm_inf(), 1e-12 * naive.norm_inf());
}

TEST(ApplyFracFast, ConstantFieldIsExactlyZero) {
  const auto g = make_grid(16, 9, 1.0);
  const auto k = build_frac_kernel(g, 0.25);
  for (double c : {0.0, 1.0, -2.7, 1e6}) {
    const auto out = apply_frac_fast(k, fill(g, c));
    for (double x : out.values()) ASSERT_EQ(x, 0.0) << "c=" << c;
  }
}

TEST(ApplyFracFast, OracleEquivalenceProperty) {
  std::mt19937_64 gen(23);
  int checked = 0;
  for (const auto& g : {make_grid(8, 8, 1.0), make_grid(16, 16, 1.0), make_grid(31, 17, 1.0)}) {
    for (double s : {0.25, 0.5, 0.75}) {
      const auto k = build_frac_kernel(g, s);
      FracWorkspace ws(k);
      Field fast(g);
      for (int trial = 0; trial < 3; ++trial) {
        const auto f = random_field(g, gen, -2.0, 5.0);
        const auto naive = apply_frac_naive(k, f);
        apply_frac_fast(k, f, fast, ws);
        ASSERT_LE((fast - naive).norm_inf(), 1e-12 * naive.norm_inf())
            << g.nx << "x" << g.ny << " s=" << s;
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 20);
}

TEST(ApplyFracFast, WorkspaceReuseIsDeterministic) {
  std::mt19937_64 gen(24);
  const auto g = make_grid(12, 10, 1.0);
  const auto k = build_frac_kernel(g, 0.5);
  const auto f = random_field(g, gen);
  FracWorkspace ws(k);
  Field a(g), b(g);
  apply_frac_fast(k, random_field(g, gen), a, ws);
  apply_frac_fast(k, f, a, ws);
  apply_frac_fast(k, f, b, ws);
  EXPECT_TRUE(testing::bitwise_equal(a, b));
  EXPECT_TRUE(testing::bitwise_equal(a, apply_frac_fast(k, f)));
}

TEST(LocalLaplacian, ConstantFieldIsExactlyZero) {
  const auto g = make_grid(8, 8, 1.0);
  for (bool neumann : {true, false}) {
    const auto out = apply_local_laplacian(fill(g, 0.37), neumann);
    for (double x : out.values()) EXPECT_EQ(x, 0.0);
  }
}

TEST(LocalLaplacian, QuadraticInterior) {
  const auto g = make_grid(256, 256, 1.0);
  Field f(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) f(i, j) = g.x_center(i) * g.x_center(i);
  const auto out = apply_local_laplacian(f);
  for (int i = 1; i < g.nx - 1; ++i)
    for (int j = 0; j < g.ny; ++j) ASSERT_NEAR(out(i, j), 2.0, 1e-3) << i << "," << j;
}

TEST(LocalLaplacian, NeumannGhostReflection) {
  // Linear in x: interior cells see zero curvature, the left face sees only
  // the inward difference (f(1) - f(0)) / h^2.
  const auto g = make_grid(5, 3, 1.0);
  Field f(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) f(i, j) = i;
  const auto out = apply_local_laplacian(f);
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int j = 0; j < g.ny; ++j) {
    EXPECT_DOUBLE_EQ(out(0, j), inv_h2);
    EXPECT_DOUBLE_EQ(out(2, j), 0.0);
    EXPECT_DOUBLE_EQ(out(4, j), -inv_h2);
  }
}

TEST(LocalLaplacian, ConservesRandomFields) {
  std::mt19937_64 gen(25);
  for (bool neumann : {true, false}) {
    const auto g = make_grid(32, 20, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_field(g, gen);
      EXPECT_LE(std::abs(integrate_field(apply_local_laplacian(f, neumann))),
                1e-10 * f.norm_inf());
    }
  }
}

struct OperatorCase {
  std::string name;
  std::function<Field(const Field&)> apply;
};

std::vector<OperatorCase> operators_on(const GridSpec& g,
                                       std::vector<std::unique_ptr<FracKernel>>& keep) {
  std::vector<OperatorCase> ops;
  ops.push_back({"local", [](const Field& f) { return apply_local_laplacian(f); }});
  for (double s : {0.25, 0.5, 0.75}) {
    keep.push_back(std::make_unique<FracKernel>(g, s));
    const FracKernel* k = keep.back().get();
    ops.push_back({"frac_fast s=" + std::to_string(s),
                   [k](const Field& f) { return apply_frac_fast(*k, f); }});
    ops.push_back({"frac_naive s=" + std::to_string(s),
                   [k](const Field& f) { return apply_frac_naive(*k, f); }});
  }
  return ops;
}

TEST(OperatorProperties, SelfAdjointConservativeDissipative) {
  std::mt19937_64 gen(26);
  std::uniform_int_distribution<int> dim(3, 32);
  for (int trial = 0; trial < 8; ++trial) {
    const auto g = make_grid(dim(gen), dim(gen), 1.0);
    std::vector<std::unique_ptr<FracKernel>> keep;
    for (const auto& op : operators_on(g, keep)) {
      const auto a = random_field(g, gen);
      const auto b = random_field(g, gen);
      const auto la = op.apply(a);
      const double na = std::sqrt(inner(a, a));
      const double nb = std::sqrt(inner(b, b));
      EXPECT_LE(std::abs(inner(la, b) - inner(a, op.apply(b))), 1e-10 * na * nb) << op.name;
      EXPECT_LE(std::abs(integrate_field(la)), 1e-10 * a.norm_inf()) << op.name;
      EXPECT_LE(inner(la, a), 1e-10 * na * na) << op.name;
    }
  }
}

TEST(OperatorProperties, NullSpaceIsConstants) {
  std::mt19937_64 gen(27);
  const auto g = make_grid(10, 7, 1.0);
  std::vector<std::unique_ptr<FracKernel>> keep;
  for (const auto& op : operators_on(g, keep)) {
    EXPECT_EQ(op.apply(fill(g, 2.0)).norm_inf(), 0.0) << op.name;
    EXPECT_GT(op.apply(random_field(g, gen)).norm_inf(), 0.0) << op.name;
    Field bump = fill(g, 1.0);
    bump(9, 6) = 1.5;
    EXPECT_GT(op.apply(bump).norm_inf(), 0.0) << op.name;
  }
}

TEST(KernelCsv, DumpsEveryDisplacement) {
  const auto g = make_grid(3, 4, 1.0);
  const auto k = build_frac_kernel(g, 0.5);
  std::ostringstream os;
  write_kernel_csv(k, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "di,dj,weight");
  int rows = 0;
  while (std::getline(is, line)) {
    int di = 0, dj = 0;
    double w = 0.0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%d,%lf", &di, &dj, &w), 3) << line;
    EXPECT_EQ(w, k.weight(di, dj));
    ++rows;
  }
  EXPECT_EQ(rows, (2 * 3 - 1) * (2 * 4 - 1) - 1);
}

}  // namespace
}  // namespace gsfrac
