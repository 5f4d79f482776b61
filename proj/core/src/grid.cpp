#include "gsfrac/grid.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "gsfrac/error.hpp"

namespace gsfrac {

GridSpec make_grid(int nx, int ny, double length) {
  if (nx < 2 || ny < 2) {
    throw InvalidArgument("grid needs at least 2 cells per axis, got " +
                          std::to_string(nx) + "x" + std::to_string(ny));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("grid length must be positive and finite");
  }
  return GridSpec{nx, ny, length, length / nx};
}

Field::Field(const GridSpec& grid) : grid_(grid), values_(grid.size(), 0.0) {}

Field::Field(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("field has " + std::to_string(values_.size()) +
                          " values, grid needs " + std::to_string(grid_.size()));
  }
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }

double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

double Field::norm_inf() const {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double x) { return std::isfinite(x); });
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other, "operator+=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other, "operator-=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Field& Field::operator*=(double a) {
  for (double& x : values_) x *= a;
  return *this;
}

Field& Field::axpy(double a, const Field& x) {
  require_same_grid(*this, x, "axpy");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * x.values_[k];
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double a, Field f) { return f *= a; }

Field fill(const GridSpec& grid, double value) {
  if (!std::isfinite(value)) throw InvalidArgument("fill value must be finite");
  return Field(grid, std::vector<double>(grid.size(), value));
}

namespace {

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace

double integrate_field(const Field& f) {
  return pairwise_sum(f.values()) * f.grid().cell_area();
}

double inner(const Field& a, const Field& b) {
  require_same_grid(a, b, "inner");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum * a.grid().cell_area();
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (!(a.grid() == b.grid())) {
    throw GridMismatch(std::string(what) + ": fields live on different grids");
  }
}

}  // namespace gsfrac
