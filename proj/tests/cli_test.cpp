#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = frobcoh::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Set FROBCOH_UPDATE_GOLDEN=1 to rewrite the files instead of comparing.
void expect_golden(const std::string& name, const std::string& actual) {
  const fs::path path = fs::path(FROBCOH_GOLDEN_DIR) / (name + ".txt");
  if (const char* update = std::getenv("FROBCOH_UPDATE_GOLDEN"); update && std::string(update) == "1") {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  ASSERT_TRUE(fs::exists(path)) << "missing golden file " << path;
  EXPECT_EQ(slurp(path), actual) << "golden mismatch for " << name;
}

struct Case {
  std::string name;
  std::vector<std::string> args;
  int code;
};

class Golden : public ::testing::TestWithParam<Case> {};

TEST_P(Golden, MatchesFile) {
  const auto& c = GetParam();
  const auto r = run(c.args);
  EXPECT_EQ(r.code, c.code) << r.err;
  expect_golden(c.name, r.out);
  if (c.code != 0) EXPECT_FALSE(r.err.empty());
}

INSTANTIATE_TEST_SUITE_P(
    Commands, Golden,
    ::testing::Values(
        Case{"lemma_ab", {"lemma-ab", "--sweep", "-8", "8"}, 0},
        Case{"lemma_ab_json", {"--format", "json", "lemma-ab", "--sweep", "-3", "3"}, 0},
        Case{"lemma_bcoker_0_0", {"lemma-bcoker", "--a", "0", "--b", "0"}, 0},
        Case{"lemma_bcoker_0_1", {"lemma-bcoker", "--a", "0", "--b", "1", "--format", "json"}, 0},
        Case{"lemma_bg_m8_4", {"lemma-bg", "--a", "-8", "--b", "4"}, 0},
        Case{"lemma_bg_1_5", {"lemma-bg", "--a", "1", "--b", "5", "--format", "csv"}, 0},
        Case{"lemma_hfb_0_0", {"lemma-hfb", "--a", "0", "--b", "0"}, 0},
        Case{"lemma_hfb_1_5", {"lemma-hfb", "--a", "1", "--b", "5", "--format", "json"}, 0},
        Case{"lemma_hfb_hypothesis", {"lemma-hfb", "--a", "-1", "--b", "0"}, 2},
        Case{"thm_kod_fails_p2", {"thm-kod-fails", "--p", "2"}, 1},
        Case{"thm_kod_fails_p3", {"thm-kod-fails", "--p", "3", "--format", "json"}, 0},
        Case{"thm_kod_fails_p5", {"thm-kod-fails", "--p", "5"}, 2},
        Case{"certify_main2", {"certify-main2", "--format", "json"}, 1},
        Case{"certify_main2_csv", {"certify-main2", "--format", "csv"}, 1},
        Case{"cm_window", {"cm-window"}, 1},
        Case{"cm_window_q2", {"cm-window", "--q", "2"}, 2},
        Case{"table_hY", {"table", "hY", "--arange", "-1", "1", "--brange", "-4", "-2"}, 0},
        Case{"bad_prime", {"--p", "4", "lemma-ab"}, 2},
        Case{"bad_table", {"table", "hX"}, 2}),
    [](const ::testing::TestParamInfo<Case>& info) { return info.param.name; });

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"lemma-bcoker", "--a", "0"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "lemma-ab"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CertificateFilesAreByteIdentical) {
  const auto dir = fs::temp_directory_path() / "frobcoh_cli_test";
  fs::create_directories(dir);
  const auto first = (dir / "cert1.json").string();
  const auto second = (dir / "cert2.json").string();
  const auto r1 = run({"certify-main2", "--out", first, "--format", "json"});
  const auto r2 = run({"certify-main2", "--out", second, "--format", "json"});
  EXPECT_EQ(r1.code, r2.code);
  ASSERT_TRUE(fs::exists(first));
  EXPECT_EQ(slurp(first), slurp(second));
  EXPECT_EQ(slurp(first), run({"certify-main2", "--format", "json"}).out);
  fs::remove_all(dir);
}

TEST(Cli, CacheDirectoryRoundTrip) {
  const auto dir = fs::temp_directory_path() / "frobcoh_cli_cache";
  fs::remove_all(dir);
  ::setenv("FROBCOH_CACHE_DIR", dir.c_str(), 1);
  const auto cold = run({"table", "hY", "--arange", "-2", "2", "--brange", "0", "1"});
  ASSERT_EQ(cold.code, 0);
  EXPECT_TRUE(fs::exists(dir / "hY_p2_n3_a-2_2_b0_1.csv"));
  const auto warm = run({"table", "hY", "--arange", "-2", "2", "--brange", "0", "1"});
  ::unsetenv("FROBCOH_CACHE_DIR");
  EXPECT_EQ(cold.out, warm.out);
  EXPECT_EQ(cold.out, run({"table", "hY", "--arange", "-2", "2", "--brange", "0", "1"}).out);
  fs::remove_all(dir);
}

}  // namespace
