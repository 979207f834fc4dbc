#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "run_config.hpp"

using namespace flqkd::cli;
namespace fs = std::filesystem;

namespace {

const std::string kCli = FLQKD_CLI_PATH;
const std::string kConfigs = FLQKD_CONFIG_DIR;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() /
                       ("flqkd_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

RunConfig small_monitor_config() {
  RunConfig c = load_config(kConfigs + "/default.json");
  for (auto& [k, v] : c.monitor->fields) {
    if (k == "duration") v = 5.0;
  }
  c.monitor->trials = 3;
  c.monitor->null_trials = 3;
  c.monitor->f_e_values = {0.0, 1.0};
  return c;
}

}  // namespace

TEST(Config, DefaultsMatchShippedFile) {
  const RunConfig file = load_config(kConfigs + "/default.json");
  RunConfig defaults = default_config();
  EXPECT_EQ(file.system, defaults.system);
  EXPECT_EQ(file.attack, defaults.attack);
  EXPECT_EQ(file.sweep, defaults.sweep);
  EXPECT_EQ(file.optimize, defaults.optimize);
  ASSERT_TRUE(file.monitor.has_value());
  EXPECT_EQ(file.monitor->seed, 20240611u);
}

TEST(Config, DumpParseRoundTrip) {
  const RunConfig original = load_config(kConfigs + "/default.json");
  const RunConfig again = parse_config(dump_config(original).dump(2));
  EXPECT_TRUE(again == original);
  const RunConfig defaults = default_config();
  EXPECT_TRUE(parse_config(dump_config(defaults).dump()) == defaults);
}

TEST(Config, ModesPerBitFollowsBandwidthWhenOmitted) {
  const RunConfig c = parse_config(R"({"system": {"bandwidth_hz": 1e12, "modulation_rate": 1e8}})");
  EXPECT_DOUBLE_EQ(c.system_value("modes_per_bit"), 1e4);
  const RunConfig d = parse_config(R"({"system": {"bandwidth_hz": 1e12, "modes_per_bit": 500}})");
  EXPECT_DOUBLE_EQ(d.system_value("modes_per_bit"), 500);
}

TEST(Config, ErrorsCarryLineNumbers) {
  try {
    parse_config("{\n  \"system\": {\n    \"kappa\": 1.5\n  }\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("kappa"), std::string::npos);
  }
  try {
    parse_config("{\n  \"sweep\": {\n    \"points\": 10,\n    \"bogus\": 1\n  }\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  try {
    parse_config("{\n  \"system\": {\n    \"kappa\": ,\n  }\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_config(R"({"extra": {}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"attack": {"f_e": 0.1, "sigma": 0.1}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"monitor": {"tap_alice": 0.5}})"), ConfigError);
}

TEST(Config, ActiveInjection) {
  RunConfig c = default_config();
  EXPECT_NEAR(c.active_f_e(1), 0.0027, 1e-15);
  EXPECT_NEAR(c.active_f_e(5), 0.0107, 1e-15);
  c.attack.f_e = 0.01;
  EXPECT_EQ(c.active_f_e(3), 0.01);
}

TEST(Commands, TableShapes) {
  RunConfig c = default_config();
  c.sweep.points = 17;
  const CommandResult rate = cmd_rate_curve(c);
  EXPECT_EQ(rate.table.rows().size(), 17u);
  EXPECT_EQ(rate.table.columns().size(), 10u);
  EXPECT_EQ(cmd_ber_curve(c).table.rows().size(), 17u);
  const CommandResult opt = cmd_optimize(c);
  ASSERT_EQ(opt.table.rows().size(), 5u);
  const auto skr = opt.table.numeric_column("skr");
  for (std::size_t i = 1; i < skr.size(); ++i) EXPECT_LT(skr[i], skr[i - 1]);
  c.attack.f_e = 0.0;
  EXPECT_EQ(cmd_optimize(c).table.rows().size(), 1u);
  const CommandResult lim = cmd_limit(default_config());
  ASSERT_EQ(lim.table.rows().size(), 1u);
  EXPECT_NEAR(lim.table.numeric_column("limit_bits_per_mode")[0], 0.15200309344504998, 1e-12);
}

TEST(Commands, RateCurveExamples) {
  RunConfig c = default_config();
  c.sweep = {0.005, 0.01, 2, true};
  EXPECT_EQ(cmd_rate_curve(c).table.rows().size(), 2u);

  c = default_config();
  c.sweep.points = 400;
  const Table active = cmd_rate_curve(c).table;
  const auto skr = active.numeric_column("skr_active");
  EXPECT_NEAR(*std::max_element(skr.begin(), skr.end()), 55e6, 5.5e6);

  c.sweep.points = 25;
  c.attack.f_e = 0.0;
  const Table t = cmd_rate_curve(c).table;
  EXPECT_EQ(t.numeric_column("chi_ub_active"), t.numeric_column("chi_ub_passive"));
  EXPECT_EQ(t.numeric_column("skr_active"), t.numeric_column("skr_passive"));
  const std::vector<std::string> columns = {"ppb", "n_s", "ber", "i_ab", "chi_ub_active", "chi_ub_passive",
                                            "ske_active", "ske_passive", "skr_active", "skr_passive"};
  EXPECT_EQ(t.columns(), columns);
}

TEST(Commands, OptimizeWithoutUncertaintyRepeatsRows) {
  RunConfig c = default_config();
  c.attack.sigma = 0.0;
  const Table t = cmd_optimize(c).table;
  ASSERT_EQ(t.rows().size(), 5u);
  const auto skr = t.numeric_column("skr");
  for (double v : skr) EXPECT_EQ(v, skr.front());
  c = default_config();
  c.attack.f_e = 0.6;
  c.optimize.n_s_min = 0.2;
  const Table none = cmd_optimize(c).table;
  EXPECT_LT(none.numeric_column("skr")[0], 0.0);
  EXPECT_EQ(none.numeric_column("no_positive_key")[0], 1.0);
}

TEST(Commands, BerCurveExamples) {
  RunConfig c = default_config();
  c.sweep = {0.0, 0.01, 3, false};
  const Table t = cmd_ber_curve(c).table;
  const auto ppb = t.numeric_column("ppb");
  const auto alice = t.numeric_column("ber_alice_theory");
  const auto eve = t.numeric_column("ber_eve_qcb");
  EXPECT_EQ(ppb[0], 0.0);
  EXPECT_EQ(alice[0], 0.5);
  EXPECT_EQ(eve[0], 0.5);
  EXPECT_NEAR(ppb[2], 200.0, 1e-9);
  EXPECT_NEAR(alice[2], 2.16e-2, 5e-5);
  EXPECT_NEAR(eve[2], 0.40577876545976336851, 1e-14);
}

TEST(Commands, LimitExamples) {
  RunConfig c = default_config();
  c.limit.ske = 0.55;
  EXPECT_NEAR(cmd_limit(c).table.numeric_column("advantage_db")[0], 5.585102630465462, 1e-12);
  c = parse_config(R"({"system": {"kappa": 0.5}, "limit": {"ske": 1.0}})");
  EXPECT_NEAR(cmd_limit(c).table.numeric_column("advantage_db")[0], 0.0, 1e-15);
  c = default_config();
  c.limit.ske = -std::log2(0.9);
  EXPECT_NEAR(cmd_limit(c).table.numeric_column("advantage_db")[0], 0.0, 1e-15);
}

TEST(Commands, MonitorSim) {
  const RunConfig c = small_monitor_config();
  const CommandResult r = cmd_monitor_sim(c);
  EXPECT_EQ(r.table.rows().size(), 3u);
  EXPECT_EQ(r.table.rows().back()[0].text, "null");
  EXPECT_EQ(r.table.to_csv(9), cmd_monitor_sim(c).table.to_csv(9));
  EXPECT_THROW(cmd_monitor_sim(default_config()), ConfigError);
}

TEST(Commands, BrightnessGrid) {
  const auto lin = brightness_grid({0.0, 1.0, 5, false});
  ASSERT_EQ(lin.size(), 5u);
  EXPECT_EQ(lin.front(), 0.0);
  EXPECT_EQ(lin.back(), 1.0);
  const auto lg = brightness_grid({1e-4, 1e-2, 3, true});
  EXPECT_NEAR(lg[1], 1e-3, 1e-15);
}

TEST(Binary, ExitCodes) {
  const fs::path dir = scratch_dir();
  EXPECT_EQ(run("--version"), 0);
  EXPECT_EQ(run("limit"), 0);
  EXPECT_EQ(run("no-such-command"), 2);
  EXPECT_EQ(run("--config " + (dir / "missing.json").string() + " limit"), 2);
  write(dir / "bad.json", "{\"system\": {\"kappa\": 7}}");
  EXPECT_EQ(run("--config " + (dir / "bad.json").string() + " optimize"), 2);
  write(dir / "nomon.json", "{}");
  EXPECT_EQ(run("--config " + (dir / "nomon.json").string() + " monitor-sim"), 2);
  EXPECT_EQ(run("--config " + (dir / "nomon.json").string() + " --seed 3 limit"), 2);
  // Zero idler efficiency leaves Alice without coincidences.
  write(dir / "dark.json",
        "{\"monitor\": {\"pair_rate\": 0, \"duration\": 1, \"trials\": 2, \"null_trials\": 2}}");
  EXPECT_EQ(run("--config " + (dir / "dark.json").string() + " monitor-sim"), 4);
  write(dir / "neg.json", "{\"attack\": {\"f_e\": 0.9}, \"limit\": {}}");
  EXPECT_EQ(run("--config " + (dir / "neg.json").string() + " limit"), 3);
  EXPECT_EQ(run("limit --out " + (dir / "no_dir" / "x.csv").string()), 1);
  fs::remove_all(dir);
}

TEST(Binary, FailedRunLeavesNoFiles) {
  const fs::path dir = scratch_dir();
  write(dir / "neg.json", "{\"attack\": {\"f_e\": 0.9}}");
  EXPECT_NE(run("--config " + (dir / "neg.json").string() + " limit --out " + (dir / "a.csv").string() +
                " --svg " + (dir / "a.svg").string()),
            0);
  EXPECT_EQ(run("limit --out " + (dir / "b.csv").string() + " --svg " + (dir / "b.svg").string()), 2);
  for (const auto& entry : fs::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().extension(), ".json") << entry.path();
  }
  fs::remove_all(dir);
}

TEST(Binary, WritesCsvAndSvg) {
  const fs::path dir = scratch_dir();
  ASSERT_EQ(run("rate-curve --out " + (dir / "r.csv").string() + " --svg " + (dir / "r.svg").string()), 0);
  const std::string csv = slurp(dir / "r.csv");
  EXPECT_EQ(csv.rfind("ppb,n_s,ber,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 201);
  EXPECT_NE(slurp(dir / "r.svg").find("<svg"), std::string::npos);
  const std::string dump_path = (dir / "dump.json").string();
  ASSERT_EQ(std::system((kCli + " --config " + kConfigs + "/default.json --dump-config > " +
                         dump_path).c_str()),
            0);
  EXPECT_TRUE(load_config(dump_path) == load_config(kConfigs + "/default.json"));
  fs::remove_all(dir);
}
