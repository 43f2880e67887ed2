#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ntdice/serialization.hpp"
#include "ntdice_cli/cli.hpp"

namespace cli = ntdice::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::filesystem::path(NTDICE_GOLDEN_DIR) / name, std::ios::binary);
  EXPECT_TRUE(in) << name;
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CacheDirGuard {
 public:
  explicit CacheDirGuard(const std::filesystem::path& dir) {
    ::setenv(cli::kCacheDirEnv, dir.c_str(), 1);
  }
  ~CacheDirGuard() { ::unsetenv(cli::kCacheDirEnv); }
};

}  // namespace

TEST(Golden, ExampleInvocations) {
  ::unsetenv(cli::kCacheDirEnv);
  for (int rep = 0; rep < 2; ++rep) {
    const Result a = run({"analyze", "ACBBACCBA", "--json"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, golden("analyze_acbbaccba.json"));

    const Result c = run({"construct", "--n", "7", "--json"});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.out, golden("construct_n7.json"));

    const Result bad = run({"analyze", "ABCA"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.out, "");
    EXPECT_EQ(bad.err, golden("analyze_abca.stderr"));
  }
}

TEST(Golden, ScansIdenticalAcrossWorkerCounts) {
  ::unsetenv(cli::kCacheDirEnv);
  for (const char* workers : {"1", "2", "5"}) {
    EXPECT_EQ(run({"enumerate", "--n", "3", "--json", "--workers", workers}).out,
              golden("enumerate_n3.json"));
    EXPECT_EQ(run({"verify-fair", "--n", "2", "--json", "--workers", workers}).out,
              golden("verify_fair_n2.json"));
  }
  EXPECT_EQ(run({"optimize", "--n", "24", "--json"}).out, golden("optimize_n24.json"));
}

TEST(ExitCodes, UsageAndDomain) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"analyze", "ABC", "--bogus"}).code, 2);
  EXPECT_EQ(run({"construct"}).code, 2);
  EXPECT_EQ(run({"construct", "--n", "x"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--n", "3", "--filter", "pretty"}).code, 2);
  EXPECT_EQ(run({"construct", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"analyze", "ABQ"}).code, 1);
  EXPECT_EQ(run({"optimize", "--n", "7"}).code, 1);
  EXPECT_EQ(run({"enumerate", "--n", "7"}).code, 1);
  EXPECT_EQ(run({"normalize2", "AABB"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"analyze", "--help"}).code, 0);
}

TEST(Output, HumanTableHasThreeProbabilityRows) {
  const Result r = run({"analyze", "ACBBACCBA"});
  EXPECT_EQ(r.code, 0);
  std::size_t rows = 0;
  for (std::size_t at = r.out.find("P = 5/9"); at != std::string::npos; at = r.out.find("P = 5/9", at + 1)) {
    ++rows;
  }
  EXPECT_EQ(rows, 3u);
}

TEST(Output, UnbalancedWordHasNullCommonProbability) {
  const Result r = run({"analyze", "ABC", "--json"});
  EXPECT_EQ(r.out,
            "{\"n\":1,\"counts\":[0,0,1],\"p\":null,\"p_pairs\":{\"ab\":\"0\",\"bc\":\"0\",\"ca\":\"1\"},"
            "\"balanced\":false,\"nontransitive\":false,\"fair\":false}\n");
}

TEST(Output, DiceRoundTrip) {
  const Result d = run({"word2dice", "ACBBACCBA", "--json"});
  EXPECT_EQ(d.out, "{\"n\":3,\"A\":[1,5,9],\"B\":[3,4,8],\"C\":[2,6,7]}\n");
  std::string json = d.out;
  json.pop_back();
  EXPECT_EQ(run({"dice2word", json}).out, "ACBBACCBA\n");
  EXPECT_EQ(run({"dice2word", "{\"n\":1,\"A\":[1],\"B\":[1],\"C\":[3]}"}).code, 1);
}

TEST(Output, MovePathFilesReload) {
  const auto dir = std::filesystem::temp_directory_path() / "ntdice_cli_paths";
  std::filesystem::create_directories(dir);
  const auto sim = dir / "similar.json";
  const auto norm = dir / "norm.json";
  const auto opt = dir / "opt.json";
  EXPECT_EQ(run({"similar", "AABBCCCCBBAA", "ABCCBAABCCBA", "--out", sim.string()}).code, 0);
  EXPECT_EQ(run({"normalize2", "AABBBBAA", "--out", norm.string()}).code, 0);
  EXPECT_EQ(run({"optimize", "--n", "30", "--out", opt.string()}).code, 0);
  for (const auto& p : {sim, norm, opt}) {
    std::ifstream in(p);
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    EXPECT_NO_THROW(ntdice::move_path_from_json(text)) << p;
  }
  std::filesystem::remove_all(dir);
}

TEST(Cache, EnvironmentDirectoryIsUsedAndVerified) {
  const auto dir = std::filesystem::temp_directory_path() / "ntdice_cli_cache";
  std::filesystem::remove_all(dir);
  CacheDirGuard guard(dir);
  const Result first = run({"enumerate", "--n", "3", "--json"});
  ASSERT_EQ(first.code, 0);
  const auto file = dir / "stats-n3.json";
  ASSERT_TRUE(std::filesystem::exists(file));
  const Result second = run({"enumerate", "--n", "3"});
  EXPECT_NE(second.out.find(file.string()), std::string::npos);
  EXPECT_EQ(run({"enumerate", "--n", "3", "--json"}).out, first.out);

  const auto out = dir / "copy.json";
  EXPECT_EQ(run({"enumerate", "--n", "3", "--out", out.string()}).code, 0);
  std::ifstream a(file), b(out);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}), std::string(std::istreambuf_iterator<char>(b), {}));

  std::string text = first.out;
  text.replace(text.find("ACBBACCBA"), 9, "ACBBACCAB");
  std::ofstream(file, std::ios::trunc) << text;
  const Result tampered = run({"enumerate", "--n", "3", "--json"});
  EXPECT_EQ(tampered.code, 1);
  EXPECT_NE(tampered.err.find("does not re-verify"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(CommandTable, EveryOperationReachableExactlyOnce) {
  const std::set<std::string> operations{
      "parse_word",        "word_from_dice",         "dice_from_word",
      "pair_counts",       "classify",               "concat",
      "predict_counts",    "combined_probability",   "is_irreducible",
      "apply_move",        "find_step2_sites",       "normalize_two_letter_fair",
      "similar",           "construct_irreducible",  "construct_near_half",
      "stage_word",        "m_max",                  "optimize_max_prob",
      "bound_report",      "enumerate",              "max_probability",
      "verify_fair_conjecture", "cache_stats",       "load_stats",
  };
  std::map<std::string, int> seen;
  std::set<std::string> names;
  for (const auto& c : cli::command_table()) {
    EXPECT_TRUE(names.insert(std::string(c.name)).second) << c.name;
    ++seen[std::string(c.operation)];
    for (auto op : c.also) ++seen[std::string(op)];
    EXPECT_EQ(run({std::string(c.name), "--help"}).code, 0) << c.name;
  }
  EXPECT_EQ(names.size(), 14u);
  for (const auto& op : operations) EXPECT_EQ(seen[op], 1) << op;
  EXPECT_EQ(seen.size(), operations.size());
}
