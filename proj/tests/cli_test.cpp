#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "causet/cli.hpp"

namespace causet::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("causet_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string put(const std::string& name, const std::string& content) const {
    write_file(path(name), content);
    return path(name);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

constexpr const char* kRegion = R"({"shape":"diamond","past":[0,0],"future":[10,0]})";
constexpr const char* kRelay = R"({"seed":3,"max_events":50,"clock":{"node":9,"period":0.5},
  "nodes":[{"id":0,"state":"excited","position":[0]},{"id":1,"state":"ground","position":[1]},
           {"id":2,"state":"ground","kind":"massive","position":[3]}]})";

TEST_F(CliTest, SprinkleWritesCausetAndManifest) {
  const auto region = put("region.json", kRegion);
  ASSERT_EQ(cmd_sprinkle({region, 2.0, 42, path("s.json")}, out_, err_), kExitOk) << err_.str();
  const auto doc = import_json(read_file(path("s.json")));
  EXPECT_GT(doc.causet.size(), 0u);
  EXPECT_EQ(doc.coords.size(), doc.causet.size());
  EXPECT_EQ(doc.meta["seed"], 42);

  const auto manifest = Json::parse(read_file(manifest_path(path("s.json"))));
  EXPECT_EQ(manifest["command"], "sprinkle");
  EXPECT_EQ(manifest["config_path"], region);
  EXPECT_EQ(manifest["seed"], 42);
  EXPECT_EQ(manifest["tool_version"], kToolVersion);
  EXPECT_EQ(manifest["details"]["element_count"], doc.causet.size());
  EXPECT_FALSE(manifest["started"].get<std::string>().empty());
}

TEST_F(CliTest, SprinkleIsByteIdenticalPerSeed) {
  const auto region = put("region.json", kRegion);
  ASSERT_EQ(cmd_sprinkle({region, 1.0, 5, path("a.json")}, out_, err_), kExitOk);
  ASSERT_EQ(cmd_sprinkle({region, 1.0, 5, path("b.json")}, out_, err_), kExitOk);
  ASSERT_EQ(cmd_sprinkle({region, 1.0, 6, path("c.json")}, out_, err_), kExitOk);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  EXPECT_NE(read_file(path("a.json")), read_file(path("c.json")));
}

TEST_F(CliTest, SprinkleErrors) {
  EXPECT_EQ(cmd_sprinkle({path("missing.json"), 1.0, 1, path("o.json")}, out_, err_), kExitIo);
  const auto bad = put("bad.json", R"({"shape":"diamond","past":[0,0],"future":[1,4]})");
  EXPECT_EQ(cmd_sprinkle({bad, 1.0, 1, path("o.json")}, out_, err_), kExitBadInput);
  const auto region = put("region.json", kRegion);
  EXPECT_EQ(cmd_sprinkle({region, -1.0, 1, path("o.json")}, out_, err_), kExitBadInput);
  EXPECT_EQ(cmd_sprinkle({region, 1.0, 1, path("nodir/o.json")}, out_, err_), kExitIo);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, GrowWritesCausetLogAndManifest) {
  const auto cfg = put("relay.json", kRelay);
  ASSERT_EQ(cmd_grow({cfg, std::nullopt, path("g.json"), std::nullopt}, out_, err_), kExitOk) << err_.str();
  const auto doc = import_json(read_file(path("g.json")));
  EXPECT_EQ(doc.meta["transactions"], 50);
  const auto log = read_file(path("g.json.transactions.jsonl"));
  EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 50);
  const auto manifest = Json::parse(read_file(manifest_path(path("g.json"))));
  EXPECT_EQ(manifest["command"], "grow");
  EXPECT_EQ(manifest["seed"], 3);
  EXPECT_EQ(manifest["details"]["stop_reason"], "max_events");

  ASSERT_EQ(cmd_grow({cfg, 11, path("h.json"), path("h.log")}, out_, err_), kExitOk);
  EXPECT_TRUE(fs::exists(path("h.log")));
  EXPECT_EQ(Json::parse(read_file(manifest_path(path("h.json"))))["seed"], 11);
}

TEST_F(CliTest, GrowIsByteIdenticalPerSeed) {
  const auto cfg = put("relay.json", kRelay);
  ASSERT_EQ(cmd_grow({cfg, 8, path("a.json"), std::nullopt}, out_, err_), kExitOk);
  ASSERT_EQ(cmd_grow({cfg, 8, path("b.json"), std::nullopt}, out_, err_), kExitOk);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  EXPECT_EQ(read_file(path("a.json.transactions.jsonl")), read_file(path("b.json.transactions.jsonl")));
}

TEST_F(CliTest, GrowErrors) {
  const auto none = put("none.json", R"({"max_events":3,"nodes":[{"id":0,"state":"ground"},{"id":1}]})");
  EXPECT_EQ(cmd_grow({none, std::nullopt, path("o.json"), std::nullopt}, out_, err_), kExitNoCandidates);
  const auto broken = put("broken.json", "{\"nodes\":");
  EXPECT_EQ(cmd_grow({broken, std::nullopt, path("o.json"), std::nullopt}, out_, err_), kExitBadInput);
  EXPECT_EQ(cmd_grow({path("absent.json"), std::nullopt, path("o.json"), std::nullopt}, out_, err_), kExitIo);
}

TEST_F(CliTest, ValidateReportsViolations) {
  const auto good = put("good.json", R"({"relations":[[0,1],[1,2]]})");
  EXPECT_EQ(cmd_validate(good, out_, err_), kExitOk);
  EXPECT_NE(out_.str().find("acyclic: yes"), std::string::npos);

  std::ostringstream out;
  const auto cyclic = put("cyclic.json", R"({"relations":[[0,1],[1,0]]})");
  EXPECT_EQ(cmd_validate(cyclic, out, err_), kExitInvalid);
  EXPECT_NE(out.str().find("acyclic: no"), std::string::npos);
  EXPECT_NE(out.str().find("violation"), std::string::npos);

  const auto reflexive = put("reflexive.json", R"({"relations":[[0,0]]})");
  EXPECT_EQ(cmd_validate(reflexive, out_, err_), kExitInvalid);
  EXPECT_EQ(cmd_validate(put("junk.json", "nope"), out_, err_), kExitBadInput);
  EXPECT_EQ(cmd_validate(path("absent.json"), out_, err_), kExitIo);
}

TEST_F(CliTest, AnalyzeStatsAndDot) {
  const auto forked = put("forked.json", R"({"relations":[[0,1],[1,2],[0,3],[0,4]]})");
  ASSERT_EQ(cmd_analyze({forked, std::nullopt, false}, out_, err_), kExitOk);
  const auto s = Json::parse(out_.str());
  EXPECT_EQ(s["longest_chain_length"], 3);
  EXPECT_EQ(s["maximum_antichain_size"], 3);
  EXPECT_EQ(s["link_count"], 4);

  std::ostringstream quiet;
  ASSERT_EQ(cmd_analyze({forked, path("f.dot"), false}, quiet, err_), kExitOk);
  EXPECT_TRUE(quiet.str().empty());
  const auto dot = read_file(path("f.dot"));
  EXPECT_EQ(dot.rfind("digraph causet {", 0), 0u);
  EXPECT_EQ(dot.find("0 -> 2"), std::string::npos);

  std::ostringstream both;
  ASSERT_EQ(cmd_analyze({forked, path("g.dot"), true}, both, err_), kExitOk);
  EXPECT_FALSE(both.str().empty());

  EXPECT_EQ(cmd_analyze({put("bad.json", R"({"relations":[[0,0]]})"), std::nullopt, false}, out_, err_), kExitInvalid);
}

#ifdef CAUSET_BIN
int run_binary(const std::string& args) {
  const int status = std::system((std::string(CAUSET_BIN) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, BinaryExitCodes) {
  const auto region = put("region.json", kRegion);
  const auto out = path("s.json");
  EXPECT_EQ(run_binary("sprinkle " + region + " --density 1 --seed 2 --out " + out), 0);
  EXPECT_EQ(run_binary("validate " + out), 0);
  EXPECT_EQ(run_binary("analyze " + out + " --stats"), 0);
  EXPECT_EQ(run_binary("validate " + put("cyc.json", R"({"relations":[[0,1],[1,0]]})")), 1);
  EXPECT_EQ(run_binary("sprinkle " + region), 2);
  EXPECT_EQ(run_binary("frobnicate"), 2);
  EXPECT_EQ(run_binary("validate " + path("absent.json")), 3);
  const auto cfg = put("relay.json", kRelay);
  EXPECT_EQ(run_binary("grow " + cfg + " --seed 4 --out " + path("g.json")), 0);
  const auto none = put("none.json", R"({"max_events":3,"nodes":[{"id":0},{"id":1}]})");
  EXPECT_EQ(run_binary("grow " + none + " --out " + path("n.json")), 4);
}
#endif

}  // namespace
}  // namespace causet::cli
