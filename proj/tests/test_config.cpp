#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

#include "gsfrac/config.hpp"
#include "gsfrac/error.hpp"

namespace gsfrac {
namespace {

int error_line(std::string_view text, const ConfigOverrides& ov = {}) {
  try {
    parse_config(text, ov);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_text(std::string_view text, const ConfigOverrides& ov = {}) {
  try {
    parse_config(text, ov);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(Presets, PaperSetup) {
  const auto c = parse_config("preset = paper\n");
  EXPECT_EQ(c.params.f, 0.04);
  EXPECT_EQ(c.params.kappa, 0.0636);
  EXPECT_EQ(c.params.d1, 1.0);
  EXPECT_EQ(c.params.d2, 0.5);
  EXPECT_EQ(c.nx, 256);
  EXPECT_EQ(c.ny, 256);
  EXPECT_EQ(c.length, 1.0);
  EXPECT_EQ(c.step.t_end, 100000.0);
  EXPECT_EQ(c.grid().h, 1.0 / 256);
}

TEST(Presets, Pearson) {
  const auto c = preset_config("pearson");
  EXPECT_EQ(c.params.d1, 2e-5);
  EXPECT_EQ(c.params.d2, 1e-5);
  EXPECT_EQ(c.params.f, 0.04);
  EXPECT_EQ(c.params.kappa, 0.0636);
  EXPECT_EQ(c.nx, 64);
  EXPECT_EQ(c.step.dt_max, 1.0);
  EXPECT_NO_THROW(validate(c));
}

TEST(Presets, UnknownName) {
  EXPECT_THROW(preset_config("nature"), ConfigError);
  EXPECT_EQ(error_line("nx = 32\npreset = nature\n"), 2);
  const auto names = preset_names();
  EXPECT_EQ(names.size(), 2u);
  for (const auto& n : names) EXPECT_NO_THROW(validate(preset_config(n)));
}

TEST(ParseConfig, EmptyTextIsPaperDefaults) {
  const auto c = parse_config("");
  EXPECT_EQ(c, preset_config("paper"));
  const auto local = parse_config("variant = local\npreset = paper\n");
  EXPECT_EQ(local.params.variant, Variant::local);
  EXPECT_EQ(local.params.d1, 1.0);
}

TEST(ParseConfig, OrderOutOfRange) {
  EXPECT_EQ(error_line("# header\n\ns = 1.5\n"), 3);
  EXPECT_NE(error_text("s = 1.5").find("s out of (0,1) for mixed variant"), std::string::npos);
  EXPECT_NO_THROW(parse_config("variant = local\ns = 1.5\n"));
}

TEST(ParseConfig, CommentsAndWhitespace) {
  const auto c = parse_config(
      "  # full line comment\n"
      "preset=pearson   # trailing comment\n"
      "\tnx   =  32\r\n"
      "output_dir = run one\n");
  EXPECT_EQ(c.preset, "pearson");
  EXPECT_EQ(c.nx, 32);
  EXPECT_EQ(c.ny, 64);
  EXPECT_EQ(c.output_dir, "run one");
}

TEST(ParseConfig, PresetExpandsBeforeOverridesRegardlessOfOrder) {
  const auto c = parse_config("d1 = 3\npreset = pearson\n");
  EXPECT_EQ(c.params.d1, 3.0);
  EXPECT_EQ(c.params.d2, 1e-5);
}

TEST(ParseConfig, Errors) {
  EXPECT_EQ(error_line("nx = 8\nbogus = 1\n"), 2);
  EXPECT_NE(error_text("bogus = 1").find("unknown key 'bogus'"), std::string::npos);
  EXPECT_EQ(error_line("nx = 8\nny = 8\nnx = 16\n"), 3);
  EXPECT_NE(error_text("nx = 8\nnx = 16\n").find("first on line 1"), std::string::npos);
  EXPECT_EQ(error_line("f 0.1\n"), 1);
  EXPECT_EQ(error_line("= 0.1\n"), 1);
  EXPECT_EQ(error_line("\nnx = 8.5\n"), 2);
  EXPECT_EQ(error_line("f = abc\n"), 1);
  EXPECT_EQ(error_line("abort_on_violation = yes\n"), 1);
  EXPECT_EQ(error_line("ic = random\n"), 1);
  EXPECT_EQ(error_line("variant = nonlocal\n"), 1);
  EXPECT_EQ(error_line("kappa = -1\n"), 1);
  EXPECT_EQ(error_line("d1 = 0.5\n"), 1);  // equals the preset's d2
  EXPECT_EQ(error_line("\n\nmonitor_every = 0\n"), 3);
  EXPECT_EQ(error_line("nx = 1\n"), 1);
  EXPECT_EQ(error_line("frac_refine = 0\n"), 1);
  EXPECT_EQ(error_line("t_end = -5\n"), 1);
  EXPECT_EQ(error_line("output_dir =\n"), 1);
}

TEST(ParseConfig, Overrides) {
  const auto c = parse_config("nx = 32\n", {{"nx", "48"}, {"preset", "pearson"}, {"s", "0.25"}});
  EXPECT_EQ(c.nx, 48);
  EXPECT_EQ(c.preset, "pearson");
  EXPECT_EQ(c.params.s, 0.25);
  EXPECT_EQ(c.params.d1, 2e-5);
  EXPECT_EQ(error_line("", {{"bogus", "1"}}), 0);
  EXPECT_EQ(error_line("", {{"s", "2"}}), 0);
  EXPECT_NE(error_text("", {{"s", "2"}}).find("s: "), std::string::npos);
  EXPECT_NE(error_text("", {{"nx", "x"}}).find("nx: "), std::string::npos);
  // An override fixes the key the file got wrong.
  EXPECT_NO_THROW(parse_config("s = 2\n", {{"s", "0.5"}}));
}

TEST(Serialize, CanonicalLayout) {
  const std::string text = serialize_config(preset_config("pearson"));
  const auto keys = config_keys();
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  std::size_t pos = 0;
  for (const auto& k : keys) {
    const std::string prefix = k + " = ";
    ASSERT_EQ(text.compare(pos, prefix.size(), prefix), 0) << k;
    pos = text.find('\n', pos) + 1;
  }
  EXPECT_EQ(pos, text.size());
  EXPECT_NE(text.find("\nd1 = 2e-05\n"), std::string::npos);
  EXPECT_NE(text.find("\nkappa = 0.0636\n"), std::string::npos);
}

TEST(Serialize, RoundTripProperty) {
  std::mt19937_64 gen(81);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dim(2, 512);
  for (int trial = 0; trial < 200; ++trial) {
    RunConfig c = preset_config(trial % 2 ? "paper" : "pearson");
    c.params.d1 = 1e-6 + unit(gen);
    c.params.d2 = c.params.d1 * (1.5 + unit(gen));
    c.params.f = unit(gen) * 0.1;
    c.params.kappa = unit(gen) * 0.1;
    c.params.s = 0.01 + 0.98 * unit(gen);
    c.params.variant = trial % 3 ? Variant::mixed : Variant::local;
    c.nx = dim(gen);
    c.ny = dim(gen);
    c.length = 0.1 + 10 * unit(gen);
    c.step.dt = unit(gen) < 0.5 ? 0.0 : unit(gen);
    c.step.t_end = 1e6 * unit(gen);
    c.step.monitor_every = 1 + trial;
    c.step.snapshot_every = trial;
    c.step.frac_refine = 1 + trial % 4;
    c.step.ic.kind = trial % 2 ? IcKind::paper : IcKind::seeded;
    c.step.ic.seeded.rng_seed = gen();
    c.step.ic.seeded.noise_amp = unit(gen) * 0.1;
    c.step.abort_on_violation = trial % 5 != 0;
    c.output_dir = "out_" + std::to_string(trial);
    ASSERT_NO_THROW(validate(c));

    const std::string text = serialize_config(c);
    const RunConfig back = parse_config(text);
    ASSERT_EQ(serialize_config(back), text);
    EXPECT_EQ(back.params.d1, c.params.d1);
    EXPECT_EQ(back.params.s, c.params.s);
    EXPECT_EQ(back.step.t_end, c.step.t_end);
    EXPECT_EQ(back.step.ic.seeded.rng_seed, c.step.ic.seeded.rng_seed);
  }
}

TEST(Validate, NamesKey) {
  RunConfig c = preset_config("paper");
  c.step.dt = -1.0;
  try {
    validate(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 0);
    EXPECT_EQ(std::string(e.what()).rfind("dt: ", 0), 0u);
  }
}

}  // namespace
}  // namespace gsfrac
