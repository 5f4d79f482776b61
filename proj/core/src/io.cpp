#include "gsfrac/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <system_error>

#include "gsfrac/error.hpp"

namespace gsfrac {

namespace {

constexpr std::string_view kMagic = "GSGRID1";
// Refuse headers describing more than this many cells per field.
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 28;

void put_le(std::ostream& os, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  std::array<char, 8> bytes;
  for (auto& b : bytes) {
    b = static_cast<char>(bits & 0xffu);
    bits >>= 8;
  }
  os.write(bytes.data(), bytes.size());
}

double get_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int k = 7; k >= 0; --k) bits = (bits << 8) | p[k];
  return std::bit_cast<double>(bits);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf.data(), end);
}

double parse_double(const std::string& text) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
  return x;
}

void write_grid_dump(const SimState& state, std::ostream& os) {
  const GridSpec& g = state.grid();
  os << kMagic << '\n' << g.nx << ' ' << g.ny << ' ' << format_double(state.t) << '\n';
  for (double x : state.u.values()) put_le(os, x);
  for (double x : state.v.values()) put_le(os, x);
  if (!os) throw Error("grid dump write failed");
}

void write_grid_dump(const SimState& state, const std::filesystem::path& path) {
  auto os = open_out(path);
  write_grid_dump(state, os);
}

SimState read_grid_dump(std::istream& is, double length) {
  std::string magic;
  if (!std::getline(is, magic) || magic != kMagic) {
    throw FormatError("grid dump: bad magic (expected GSGRID1)");
  }
  std::string header;
  if (!std::getline(is, header)) throw FormatError("grid dump: missing header line");
  std::istringstream hs(header);
  std::string snx, sny, st, extra;
  if (!(hs >> snx >> sny >> st) || (hs >> extra)) {
    throw FormatError("grid dump: header must be 'nx ny t'");
  }
  std::uint64_t nx = 0, ny = 0;
  for (auto [text, out] : {std::pair{&snx, &nx}, std::pair{&sny, &ny}}) {
    auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), *out);
    if (ec != std::errc() || ptr != text->data() + text->size()) {
      throw FormatError("grid dump: bad dimension '" + *text + "'");
    }
  }
  if (nx < 2 || ny < 2) throw FormatError("grid dump: dimensions must be >= 2");
  if (nx > kMaxCells / ny) throw FormatError("grid dump: dimensions overflow");
  double t = 0.0;
  try {
    t = parse_double(st);
  } catch (const InvalidArgument&) {
    throw FormatError("grid dump: bad time '" + st + "'");
  }

  const std::size_t cells = static_cast<std::size_t>(nx * ny);
  const std::size_t bytes = 16 * cells;
  std::vector<unsigned char> payload(bytes);
  is.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(bytes));
  if (static_cast<std::size_t>(is.gcount()) != bytes) {
    throw FormatError("grid dump: truncated payload (" + std::to_string(is.gcount()) +
                      " of " + std::to_string(bytes) + " bytes)");
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    throw FormatError("grid dump: trailing bytes after payload");
  }

  const GridSpec g = make_grid(static_cast<int>(nx), static_cast<int>(ny), length);
  SimState st_out{Field(g), Field(g), t, 0};
  for (std::size_t k = 0; k < cells; ++k) {
    st_out.u[k] = get_le(payload.data() + 8 * k);
    st_out.v[k] = get_le(payload.data() + 8 * (cells + k));
  }
  return st_out;
}

SimState read_grid_dump(const std::filesystem::path& path, double length) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  return read_grid_dump(is, length);
}

void write_pgm(const Field& f, std::ostream& os, RangePolicy range) {
  const GridSpec& g = f.grid();
  double lo = range.lo;
  double hi = range.hi;
  if (range.automatic) {
    lo = f.min();
    hi = f.max();
  }
  os << "P5\n" << g.nx << ' ' << g.ny << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(g.nx));
  const bool flat = !(hi > lo);
  for (int j = g.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx; ++i) {
      int px = 128;
      if (!flat) {
        const double scaled = std::round(255.0 * (f(i, j) - lo) / (hi - lo));
        px = static_cast<int>(std::clamp(scaled, 0.0, 255.0));
      }
      row[static_cast<std::size_t>(i)] = static_cast<unsigned char>(px);
    }
    os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!os) throw Error("PGM write failed");
}

void write_pgm(const Field& f, const std::filesystem::path& path, RangePolicy range) {
  auto os = open_out(path);
  write_pgm(f, os, range);
}

void write_invariant_header(std::ostream& os) { os << kInvariantCsvHeader << '\n'; }

void write_invariant_row(std::ostream& os, const InvariantReport& r) {
  os << format_double(r.t) << ',' << format_double(r.min_u) << ',' << format_double(r.min_v)
     << ',' << format_double(r.max_u) << ',' << format_double(r.max_v) << ','
     << format_double(r.mass) << ',' << format_double(r.sup_bound) << ','
     << format_double(r.mass_bound) << ',' << r.hard_violations() << '\n';
}

}  // namespace gsfrac
