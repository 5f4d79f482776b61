#include "gsfrac/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "gsfrac/error.hpp"
#include "gsfrac/io.hpp"

namespace gsfrac {

namespace {

struct KeySpec {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class Int>
Int parse_int(const std::string& text) {
  Int x{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("not an integer: '" + text + "'");
  }
  return x;
}

bool parse_bool(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw InvalidArgument("expected true or false, got '" + text + "'");
}

IcKind parse_ic(const std::string& text) {
  if (text == "paper") return IcKind::paper;
  if (text == "seeded") return IcKind::seeded;
  throw InvalidArgument("ic must be paper or seeded, got '" + text + "'");
}

#define GSFRAC_REAL_KEY(name, member)                                          \
  {                                                                            \
    name, {                                                                    \
      [](RunConfig& c, const std::string& v) { c.member = parse_double(v); },  \
          [](const RunConfig& c) { return format_double(c.member); }           \
    }                                                                          \
  }
#define GSFRAC_INT_KEY(name, member, type)                                           \
  {                                                                                  \
    name, {                                                                          \
      [](RunConfig& c, const std::string& v) { c.member = parse_int<type>(v); },     \
          [](const RunConfig& c) { return std::to_string(c.member); }                \
    }                                                                                \
  }

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table = {
      {"abort_on_violation",
       {[](RunConfig& c, const std::string& v) { c.step.abort_on_violation = parse_bool(v); },
        [](const RunConfig& c) {
          return std::string(c.step.abort_on_violation ? "true" : "false");
        }}},
      GSFRAC_REAL_KEY("d1", params.d1),
      GSFRAC_REAL_KEY("d2", params.d2),
      GSFRAC_REAL_KEY("dt", step.dt),
      GSFRAC_REAL_KEY("dt_max", step.dt_max),
      GSFRAC_REAL_KEY("f", params.f),
      GSFRAC_INT_KEY("frac_refine", step.frac_refine, int),
      {"ic",
       {[](RunConfig& c, const std::string& v) { c.step.ic.kind = parse_ic(v); },
        [](const RunConfig& c) {
          return std::string(c.step.ic.kind == IcKind::paper ? "paper" : "seeded");
        }}},
      GSFRAC_REAL_KEY("kappa", params.kappa),
      GSFRAC_REAL_KEY("length", length),
      GSFRAC_REAL_KEY("mass_tol", step.tol.mass),
      GSFRAC_INT_KEY("monitor_every", step.monitor_every, int),
      GSFRAC_REAL_KEY("noise_amp", step.ic.seeded.noise_amp),
      GSFRAC_REAL_KEY("nonneg_tol", step.tol.nonneg),
      GSFRAC_INT_KEY("nx", nx, int),
      GSFRAC_INT_KEY("ny", ny, int),
      {"output_dir",
       {[](RunConfig& c, const std::string& v) { c.output_dir = v; },
        [](const RunConfig& c) { return c.output_dir; }}},
      {"preset",
       {[](RunConfig& c, const std::string& v) { c.preset = v; },
        [](const RunConfig& c) { return c.preset; }}},
      GSFRAC_INT_KEY("rng_seed", step.ic.seeded.rng_seed, std::uint64_t),
      GSFRAC_REAL_KEY("s", params.s),
      GSFRAC_REAL_KEY("seed_cx", step.ic.seeded.cx),
      GSFRAC_REAL_KEY("seed_cy", step.ic.seeded.cy),
      GSFRAC_REAL_KEY("seed_half_width", step.ic.seeded.half_width),
      GSFRAC_REAL_KEY("seed_u", step.ic.seeded.u_val),
      GSFRAC_REAL_KEY("seed_v", step.ic.seeded.v_val),
      GSFRAC_INT_KEY("snapshot_every", step.snapshot_every, int),
      GSFRAC_REAL_KEY("sup_tol", step.tol.sup),
      GSFRAC_REAL_KEY("t_end", step.t_end),
      {"variant",
       {[](RunConfig& c, const std::string& v) { c.params.variant = parse_variant(v); },
        [](const RunConfig& c) { return std::string(to_string(c.params.variant)); }}},
  };
  return table;
}

#undef GSFRAC_REAL_KEY
#undef GSFRAC_INT_KEY

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct Issue {
  std::string key;
  std::string message;
  std::string other_key = {};  // also responsible; the later line is reported
};

std::optional<Issue> find_issue(const RunConfig& c) {
  const auto& p = c.params;
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.d1) || !(p.d1 > 0.0)) return Issue{"d1", "d1 must be positive"};
  if (!finite(p.d2) || !(p.d2 > 0.0)) return Issue{"d2", "d2 must be positive"};
  if (p.d1 == p.d2) return Issue{"d2", "d1 and d2 must differ", "d1"};
  if (!finite(p.f) || p.f < 0.0) return Issue{"f", "f must be >= 0"};
  if (!finite(p.kappa) || p.kappa < 0.0) return Issue{"kappa", "kappa must be >= 0"};
  if (p.variant == Variant::mixed && !(p.s > 0.0 && p.s < 1.0)) {
    return Issue{"s", "s out of (0,1) for mixed variant"};
  }
  if (c.nx < 2) return Issue{"nx", "nx must be >= 2"};
  if (c.ny < 2) return Issue{"ny", "ny must be >= 2"};
  if (!finite(c.length) || !(c.length > 0.0)) return Issue{"length", "length must be positive"};
  const auto& st = c.step;
  if (!finite(st.dt) || st.dt < 0.0) return Issue{"dt", "dt must be >= 0 (0 = automatic)"};
  if (!(st.dt_max > 0.0)) return Issue{"dt_max", "dt_max must be positive"};
  if (!finite(st.t_end) || st.t_end < 0.0) return Issue{"t_end", "t_end must be >= 0"};
  if (st.monitor_every < 1) return Issue{"monitor_every", "monitor_every must be >= 1"};
  if (st.snapshot_every < 0) return Issue{"snapshot_every", "snapshot_every must be >= 0"};
  if (st.frac_refine < 1) return Issue{"frac_refine", "frac_refine must be >= 1"};
  if (!(st.ic.seeded.half_width > 0.0)) {
    return Issue{"seed_half_width", "seed_half_width must be positive"};
  }
  if (!(st.ic.seeded.noise_amp >= 0.0)) return Issue{"noise_amp", "noise_amp must be >= 0"};
  if (!(st.tol.nonneg >= 0.0)) return Issue{"nonneg_tol", "nonneg_tol must be >= 0"};
  if (!(st.tol.sup >= 0.0)) return Issue{"sup_tol", "sup_tol must be >= 0"};
  if (!(st.tol.mass >= 0.0)) return Issue{"mass_tol", "mass_tol must be >= 0"};
  if (c.output_dir.empty()) return Issue{"output_dir", "output_dir must not be empty"};
  return std::nullopt;
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  return serialize_config(a) == serialize_config(b);
}

RunConfig preset_config(std::string_view name) {
  RunConfig c;
  c.preset = std::string(name);
  c.params = GrayScottParams{};
  c.params.f = 0.04;
  c.params.kappa = 0.0636;
  c.length = 1.0;
  c.step.monitor_every = 100;
  if (name == "paper") {
    c.params.d1 = 1.0;
    c.params.d2 = 0.5;
    c.nx = c.ny = 256;
    c.step.t_end = 100000.0;
  } else if (name == "pearson") {
    c.params.d1 = 2e-5;
    c.params.d2 = 1e-5;
    c.nx = c.ny = 64;
    c.step.t_end = 200000.0;
    c.step.dt_max = 1.0;
  } else {
    throw ConfigError(0, "unknown preset '" + std::string(name) + "' (expected paper or pearson)");
  }
  return c;
}

std::vector<std::string> preset_names() { return {"paper", "pearson"}; }

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : key_table()) keys.push_back(k);
  return keys;
}

RunConfig parse_config(std::string_view text) { return parse_config(text, {}); }

RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  struct Entry {
    int line;
    std::string key;
    std::string value;
  };
  std::vector<Entry> entries;
  std::map<std::string, int> seen;

  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected 'key = value'");
    Entry e{lineno, trim(std::string_view(body).substr(0, eq)),
            trim(std::string_view(body).substr(eq + 1))};
    if (e.key.empty()) throw ConfigError(lineno, "missing key");
    if (!key_table().contains(e.key)) throw ConfigError(lineno, "unknown key '" + e.key + "'");
    if (auto [it, fresh] = seen.emplace(e.key, lineno); !fresh) {
      throw ConfigError(lineno, "duplicate key '" + e.key + "' (first on line " +
                                    std::to_string(it->second) + ")");
    }
    entries.push_back(std::move(e));
  }

  for (const auto& [key, value] : overrides) {
    if (!key_table().contains(key)) throw ConfigError(0, "unknown key '" + key + "'");
    seen[key] = 0;
  }

  std::string preset = "paper";
  int preset_line = 0;
  for (const auto& e : entries) {
    if (e.key == "preset") {
      preset = e.value;
      preset_line = e.line;
    }
  }
  for (const auto& [key, value] : overrides) {
    if (key == "preset") {
      preset = value;
      preset_line = 0;
    }
  }
  RunConfig cfg;
  try {
    cfg = preset_config(preset);
  } catch (const ConfigError& err) {
    throw ConfigError(preset_line, err.what());
  }

  for (const auto& e : entries) {
    if (e.key == "preset") continue;
    try {
      key_table().at(e.key).set(cfg, e.value);
    } catch (const InvalidArgument& err) {
      throw ConfigError(e.line, e.key + ": " + err.what());
    }
  }
  for (const auto& [key, value] : overrides) {
    if (key == "preset") continue;
    try {
      key_table().at(key).set(cfg, value);
    } catch (const InvalidArgument& err) {
      throw ConfigError(0, key + ": " + err.what());
    }
  }

  if (auto issue = find_issue(cfg)) {
    auto line_of = [&](const std::string& key) {
      auto it = seen.find(key);
      return it == seen.end() ? -1 : it->second;
    };
    int line = line_of(issue->key);
    if (!issue->other_key.empty()) line = std::max(line, line_of(issue->other_key));
    line = std::max(line, 0);
    throw ConfigError(line, line > 0 ? issue->message : issue->key + ": " + issue->message);
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [key, spec] : key_table()) {
    out += key;
    out += " = ";
    out += spec.get(cfg);
    out += '\n';
  }
  return out;
}

void validate(const RunConfig& cfg) {
  if (auto issue = find_issue(cfg)) throw ConfigError(0, issue->key + ": " + issue->message);
}

}  // namespace gsfrac
