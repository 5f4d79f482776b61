#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gsfrac/grid.hpp"
#include "gsfrac/monitors.hpp"

namespace gsfrac {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// Strict decimal parse of a whole string; throws InvalidArgument.
double parse_double(const std::string& text);

// GridDump layout:
//
//   GSGRID1\n
//   <nx> <ny> <t>\n
//   nx*ny little-endian IEEE-754 doubles for u, then nx*ny for v (row-major)
//
// The grid length is not stored; read_grid_dump reconstructs it with h = 1/nx
// unless a length is supplied.
void write_grid_dump(const SimState& state, std::ostream& os);
void write_grid_dump(const SimState& state, const std::filesystem::path& path);

/// Throws FormatError on a bad magic, malformed header, dimensions that
/// overflow, a truncated payload or trailing bytes.
SimState read_grid_dump(std::istream& is, double length = 1.0);
SimState read_grid_dump(const std::filesystem::path& path, double length = 1.0);

struct RangePolicy {
  bool automatic = true;  // use the field's own min / max
  double lo = 0.0;
  double hi = 1.0;

  static RangePolicy autoscale() { return {}; }
  static RangePolicy fixed(double lo, double hi) { return {false, lo, hi}; }
};

/// Binary 8-bit PGM (P5), width nx and height ny, top row is j = ny - 1.
/// Values map linearly onto 0..255 and are clamped; a degenerate range
/// (constant field under autoscale, or hi <= lo) gives 128.
void write_pgm(const Field& f, std::ostream& os, RangePolicy range = {});
void write_pgm(const Field& f, const std::filesystem::path& path, RangePolicy range = {});

/// Column order of invariants.csv. Fixed.
inline constexpr const char* kInvariantCsvHeader =
    "t,min_u,min_v,max_u,max_v,mass,sup_bound,mass_bound,hard_violations";

void write_invariant_header(std::ostream& os);
void write_invariant_row(std::ostream& os, const InvariantReport& r);

}  // namespace gsfrac
