#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

namespace pubrank {
namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int status = cli::run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_files(const std::filesystem::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    n += entry.path().extension() == ext ? 1 : 0;
  }
  return n;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    auto r = run({"synth", "--seed", "3", "--out", dir.path().string()});
    ASSERT_EQ(r.status, 0) << r.err;
  }

  std::vector<std::string> inputs(std::vector<std::string> args) const {
    for (std::string flag : {"--corpus", "corpus.jsonl", "--registry-dir", "registry", "--taxonomy", "taxonomy.csv"}) {
      args.push_back(flag.starts_with("--") ? flag : (dir / flag).string());
    }
    return args;
  }

  test::TempDir dir{"cli"};
};

TEST_F(Cli, RankWritesFortyTwoFilesPerFormat) {
  auto out = dir / "rank";
  auto r = run(inputs({"rank", "--format", "csv,json,html", "--out", out.string()}));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(count_files(out, ".csv"), 42u);
  EXPECT_EQ(count_files(out, ".json"), 42u);
  EXPECT_EQ(count_files(out, ".html"), 42u);
}

TEST_F(Cli, RankTwiceIsByteIdentical) {
  auto a = dir / "a";
  auto b = dir / "b";
  ASSERT_EQ(run(inputs({"rank", "--format", "csv,json", "--out", a.string()})).status, 0);
  ASSERT_EQ(run(inputs({"rank", "--format", "csv,json", "--out", b.string()})).status, 0);
  std::size_t compared = 0;
  for (const auto& entry : std::filesystem::directory_iterator(a)) {
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
    ++compared;
  }
  EXPECT_EQ(compared, 84u);
}

TEST_F(Cli, RankWithoutOutFails) {
  auto r = run(inputs({"rank"}));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("--out"), std::string::npos);
}

TEST_F(Cli, ValidateSucceeds) {
  auto r = run(inputs({"validate"}));
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("38 disciplines"), std::string::npos);
}

TEST_F(Cli, ValidateReportsAcquisitionCycle) {
  std::ofstream(dir / "registry" / "acquisitions.csv") << "acquired_id,acquirer_id,year\npub-001,pub-002,\n"
                                                          "pub-002,pub-001,\n";
  auto r = run(inputs({"validate"}));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("cycle"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("pub-001 pub-002"), std::string::npos) << r.err;
}

TEST_F(Cli, ProfileToStdoutAndFiles) {
  auto r = run(inputs({"profile", "pub-001", "--format", "json"}));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("\"pub-001\""), std::string::npos);
  auto out = dir / "profiles";
  r = run(inputs({"profile", "pub-002", "--format", "csv,html", "--out", out.string()}));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(out / "profile_pub-002.csv"));
  EXPECT_TRUE(std::filesystem::exists(out / "profile_pub-002.html"));
  EXPECT_NE(run(inputs({"profile", "nobody-at-all"})).status, 0);
}

TEST_F(Cli, StatsPrintsFields) {
  auto out = dir / "stats";
  auto r = run(inputs({"stats", "--out", out.string()}));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("Humanities & Arts"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(out / "stats.json"));
}

TEST_F(Cli, StrictModeFailsOnUnresolvedPublisher) {
  std::ofstream(dir / "corpus.jsonl", std::ios::app)
      << R"({"id":"stray","doc_type":"book","publisher":"Nobody Press","year":2010,"categories":["History"],"citations":1})"
      << '\n';
  EXPECT_EQ(run(inputs({"validate"})).status, 0);
  auto r = run(inputs({"validate", "--strict"}));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("nobody press"), std::string::npos) << r.err;
}

TEST(CliUsage, UnknownSubcommandOrFlag) {
  auto r = run({"frobnicate"});
  EXPECT_NE(r.status, 0);
  EXPECT_FALSE(r.err.empty() && r.out.empty());
  r = run({"validate", "--corpus", "x", "--registry-dir", "y", "--bogus"});
  EXPECT_NE(r.status, 0);
  r = run({});
  EXPECT_NE(r.status, 0);
}

TEST(CliUsage, BadValues) {
  EXPECT_NE(run({"rank", "--corpus", "x", "--registry-dir", "y", "--out", "z", "--format", "pdf"}).status, 0);
  EXPECT_NE(run({"rank", "--corpus", "x", "--registry-dir", "y", "--out", "z", "--window", "2013:2009"}).status, 0);
  EXPECT_NE(run({"rank", "--corpus", "x", "--registry-dir", "y", "--out", "z", "--threshold-basis", "x"}).status, 0);
}

TEST(CliUsage, HelpExitsZero) { EXPECT_EQ(run({"--help"}).status, 0); }

TEST(RunConfig, Validate) {
  cli::RunConfig config;
  config.corpus = "c";
  config.registry_dir = "r";
  EXPECT_NO_THROW(config.validate(true, false));
  EXPECT_ANY_THROW(config.validate(true, true));
  config.formats.clear();
  EXPECT_ANY_THROW(config.validate(true, false));
}

}  // namespace
}  // namespace pubrank
