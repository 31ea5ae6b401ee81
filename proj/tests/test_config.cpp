#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "emberflow/config.hpp"

using namespace emberflow;

namespace {

// Returns the ConfigError message, or "" if parsing succeeded.
std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(Config, EmptyTextGivesDefaults) {
  const auto c = parse_config("");
  EXPECT_EQ(c, RunConfig{});
  EXPECT_EQ(c.dim, 1);
  EXPECT_EQ(c.n, 1024u);
  EXPECT_EQ(c.solver, SolverKind::etd2);
  EXPECT_EQ(c.temperature.scenario, Scenario::gaussian);
  EXPECT_EQ(c.fuel.scenario, Scenario::uniform);
}

TEST(Config, ParsesSectionsCommentsAndLists) {
  const auto c = parse_config(R"(# leading comment
[grid]
dim = 2
n = 64      # trailing comment
extent = 12.5

[model]
lambda = 0.05
beta = 0.3

[scheme]
kind = picard
slab_length = 0.25
nodes = 17

[run]
horizon = 1
snapshot_times = 0.25, 0.5 ,1

[temperature]
scenario = plateau
center = 3, 4

[audit]
bounds = linfty, fuel
level = 0.2
level_mode = absolute
)");
  EXPECT_EQ(c.dim, 2);
  EXPECT_EQ(c.n, 64u);
  EXPECT_DOUBLE_EQ(c.extent, 12.5);
  EXPECT_EQ(c.params, (ModelParams{0.05, 0.3}));
  EXPECT_EQ(c.solver, SolverKind::picard);
  EXPECT_EQ(c.picard.nodes, 17u);
  EXPECT_EQ(c.snapshot_times, (std::vector<double>{0.25, 0.5, 1.0}));
  EXPECT_EQ(c.temperature.scenario, Scenario::plateau);
  ASSERT_TRUE(c.temperature.params.center.has_value());
  EXPECT_DOUBLE_EQ((*c.temperature.params.center)[1], 4.0);
  EXPECT_EQ(c.audits, (std::vector<BoundId>{BoundId::linfty, BoundId::fuel_lp}));
  EXPECT_EQ(c.front_level, (FrontLevel{0.2, LevelMode::absolute}));
  EXPECT_EQ(c.grid().size(), 64u * 64u);
}

TEST(Config, RejectsNegativeLambdaWithLineAndKey) {
  const auto msg = error_of("[model]\n\nlambda = -1\n");
  EXPECT_TRUE(contains(msg, "line 3")) << msg;
  EXPECT_TRUE(contains(msg, "lambda")) << msg;
}

TEST(Config, RejectsNonPowerOfTwoGrid) {
  const auto msg = error_of("[grid]\nn = 100\n");
  EXPECT_TRUE(contains(msg, "line 2")) << msg;
  EXPECT_TRUE(contains(msg, "'n'")) << msg;
  EXPECT_TRUE(contains(msg, "power of two")) << msg;
}

TEST(Config, RejectsUnknownNames) {
  EXPECT_TRUE(contains(error_of("[weather]\n"), "unknown section [weather]"));
  EXPECT_TRUE(contains(error_of("[grid]\nsize = 8\n"), "unknown key 'size'"));
  EXPECT_TRUE(contains(error_of("n = 8\n"), "before any [section]"));
  EXPECT_TRUE(contains(error_of("[grid\n"), "malformed section header"));
  EXPECT_TRUE(contains(error_of("[grid]\nn 8\n"), "expected 'key = value'"));
  EXPECT_TRUE(contains(error_of("[scheme]\nkind = rk4\n"), "etd1, etd2 or picard"));
  EXPECT_TRUE(contains(error_of("[audit]\nbounds = nonsense\n"), "nonsense"));
}

TEST(Config, RejectsMalformedNumbers) {
  EXPECT_TRUE(contains(error_of("[grid]\nextent = ten\n"), "finite number"));
  EXPECT_TRUE(contains(error_of("[grid]\nextent = inf\n"), "finite number"));
  EXPECT_TRUE(contains(error_of("[grid]\nn = -8\n"), "nonnegative integer"));
  EXPECT_TRUE(contains(error_of("[grid]\nextent = 0\n"), "must be > 0"));
}

TEST(Config, CrossFieldChecksNameTheKey) {
  const auto steps = error_of("[scheme]\ndt = 0.3\n[run]\nhorizon = 1\n");
  EXPECT_TRUE(contains(steps, "line 4")) << steps;
  EXPECT_TRUE(contains(steps, "run.horizon")) << steps;
  // the offending key was never written, so the message points at the default
  const auto slabs = error_of("[scheme]\nkind = picard\nslab_length = 0.3\n");
  EXPECT_TRUE(contains(slabs, "default value")) << slabs;
  EXPECT_TRUE(contains(slabs, "slab_length")) << slabs;
  EXPECT_TRUE(contains(error_of("[run]\nsnapshot_times = 2\n"), "beyond the horizon"));
  EXPECT_TRUE(contains(error_of("[audit]\nlevel = 1.5\n"), "audit.level"));
  EXPECT_EQ(error_of("[audit]\nlevel = 1.5\nlevel_mode = absolute\n"), "");
  EXPECT_TRUE(contains(error_of("[ignite]\nlow = 3\nhigh = 2\n"), "ignite.high"));
}

TEST(Config, ValidateOnStruct) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.dt = 0.3;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, EchoRoundTrips) {
  const auto c = parse_config(R"([grid]
n = 2048
extent = 200
[model]
lambda = 0.1
beta = 0.3
[scheme]
dt = 0.005
[run]
horizon = 2.5
record_every = 7
snapshot_times = 0.1, 2.5
seed = 42
[temperature]
amplitude = 0.0017952
sigma = 2
center = 33.3
[fuel]
scenario = compact
radius = 20
[audit]
bounds = xnorm_decay, l2_uniform
eps0 = 0.03
level = 0.25
[ignite]
low = 0.4
high = 0.45
[output]
dir = somewhere/else
)");
  const auto text = to_config_text(c);
  EXPECT_EQ(parse_config(text), c);
  EXPECT_TRUE(contains(text, "amplitude = 0.0017952")) << text;
  EXPECT_TRUE(contains(text, "beta = 0.3\n")) << text;
  EXPECT_EQ(to_config_text(parse_config(text)), text);
}

TEST(Config, DefaultsEchoRoundTrip) {
  const RunConfig c;
  EXPECT_EQ(parse_config(to_config_text(c)), c);
}

TEST(Config, ShippedConfigsLoad) {
  const std::filesystem::path dir = EMBERFLOW_CONFIG_DIR;
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".cfg") continue;
    ++count;
    EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
  }
  EXPECT_GE(count, 6u);
  EXPECT_THROW(load_config(dir / "missing.cfg"), ConfigError);
}
