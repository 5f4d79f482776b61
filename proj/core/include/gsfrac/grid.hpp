#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gsfrac {

/// Uniform cell-centered discretization of [0, nx*h] x [0, ny*h].
///
/// Cell (i, j) has its center at ((i + 1/2) h, (j + 1/2) h). Storage is
/// row-major in i: the flat index of (i, j) is i * ny + j. Every module goes
/// through `index()` rather than spelling this out.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double length = 0.0;  // physical extent along x
  double h = 0.0;       // length / nx, shared by both axes

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) +
           static_cast<std::size_t>(j);
  }
  double x_center(int i) const noexcept { return (i + 0.5) * h; }
  double y_center(int j) const noexcept { return (j + 0.5) * h; }
  double cell_area() const noexcept { return h * h; }
  /// |Omega|
  double area() const noexcept { return static_cast<double>(size()) * h * h; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Throws InvalidArgument if nx or ny < 2 or length is not a positive finite
/// number.
GridSpec make_grid(int nx, int ny, double length);

/// One scalar concentration sampled at the cell centers of a grid.
class Field {
 public:
  Field() = default;
  /// Zero-initialized field on `grid`.
  explicit Field(const GridSpec& grid);
  Field(const GridSpec& grid, std::vector<double> values);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const noexcept {
    return values_[grid_.index(i, j)];
  }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double min() const;
  double max() const;
  double norm_inf() const;
  bool all_finite() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double a);
  /// this += a * x
  Field& axpy(double a, const Field& x);

  friend bool operator==(const Field&, const Field&) = default;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);

/// Constant field. Throws InvalidArgument for a non-finite value.
Field fill(const GridSpec& grid, double value);

/// Midpoint rule over the domain: h^2 times the sum of the values in storage
/// order. The sum is a fixed pairwise tree: ranges of at most 8 values are
/// added left to right, longer ranges split at n / 2 and add the two halves.
double integrate_field(const Field& f);

/// Discrete L2 inner product h^2 * sum(a * b).
double inner(const Field& a, const Field& b);

/// Throws GridMismatch unless both fields live on the same grid.
void require_same_grid(const Field& a, const Field& b, const char* what);

struct SimState {
  Field u;
  Field v;
  double t = 0.0;
  std::int64_t step_count = 0;

  const GridSpec& grid() const noexcept { return u.grid(); }
  friend bool operator==(const SimState&, const SimState&) = default;
};

}  // namespace gsfrac
