#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "evote/cli.hpp"
#include "evote/json_io.hpp"
#include "test_support.hpp"

namespace evote {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

std::string config(const char* name) { return (fs::path(EVOTE_CONFIG_DIR) / name).string(); }

class CliTest : public ::testing::Test {
 protected:
  fs::path dir;

  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("evote_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path run_honest(const std::string& sub = "out") {
    const auto r = invoke({"run", "--config", config("honest.json"), "--out", (dir / sub).string()});
    EXPECT_EQ(r.code, 0) << r.err;
    return dir / sub;
  }

  Invocation verify(const fs::path& out, const fs::path& receipt, const fs::path& board) {
    return invoke({"verify-receipt", "--receipt", receipt.string(), "--board", board.string(),
                   "--machine-pub", (out / "machine_public_key.json").string()});
  }
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"run", "--out", dir.string()}).code, 1);
  EXPECT_EQ(invoke({"run", "--config", (dir / "nope.json").string(), "--out", dir.string()}).code, 1);
  write(dir / "bad.json", "{\"election\": ");
  EXPECT_EQ(invoke({"run", "--config", (dir / "bad.json").string(), "--out", dir.string()}).code, 1);
}

TEST_F(CliTest, RunWritesArtifacts) {
  const fs::path out = run_honest();
  for (const char* f : {"order.txt", "board.json", "board.txt", "results.json", "authority_report.json",
                        "audit_report.json", "detection_report.json", "coercion_report.json",
                        "trace.json", "machine_public_key.json", "authority_key.json",
                        "bootstrap_batch.json", "receipts/0001.json", "receipts/0001.txt",
                        "receipts/0100.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_FALSE(fs::exists(out / "receipts/0101.json"));
}

TEST_F(CliTest, RunIsByteIdentical) {
  const fs::path a = run_honest("a");
  const fs::path b = run_honest("b");
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a);
    ASSERT_EQ(testing::read_text(e.path()), testing::read_text(b / rel)) << rel;
    ++files;
  }
  EXPECT_GT(files, 200u);
}

TEST_F(CliTest, RunExitCodeReflectsFindings) {
  EXPECT_EQ(invoke({"run", "--config", config("inject_fraud.json"), "--out", (dir / "f").string()}).code, 2);
  EXPECT_EQ(invoke({"run", "--config", config("skewed_bootstrap.json"), "--out", (dir / "s").string()}).code, 2);
  EXPECT_EQ(invoke({"run", "--config", config("two_selections.json"), "--out", (dir / "t").string()}).code, 0);
}

TEST_F(CliTest, VerifyReceipt) {
  const fs::path out = run_honest();
  const auto ok = verify(out, out / "receipts/0001.json", out / "board.json");
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("confirmed"), std::string::npos);

  // Tampered receipt: flip one digit of its first id.
  json receipt = parse_json_text(testing::read_text(out / "receipts/0001.json"));
  std::string id = receipt["pairings"][0]["id"];
  id[0] = id[0] == '9' ? '8' : static_cast<char>(id[0] + 1);
  receipt["pairings"][0]["id"] = id;
  write(dir / "tampered.json", receipt.dump());
  EXPECT_EQ(verify(out, dir / "tampered.json", out / "board.json").code, 3);

  // Board with one of the receipt's pairings removed.
  const json original = parse_json_text(testing::read_text(out / "receipts/0001.json"));
  const std::string target = original["pairings"][0]["id"];
  json board = parse_json_text(testing::read_text(out / "board.json"));
  json kept = json::array();
  for (const auto& e : board["entries"]) {
    if (e["id"] != target) kept.push_back(e);
  }
  board["entries"] = kept;
  write(dir / "mutated.json", board.dump());
  const auto bad = verify(out, out / "receipts/0001.json", dir / "mutated.json");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("missing"), std::string::npos);

  const std::string text = testing::read_text(out / "board.json");
  write(dir / "truncated.json", text.substr(0, text.size() / 2));
  EXPECT_EQ(verify(out, out / "receipts/0001.json", dir / "truncated.json").code, 1);

  const auto as_json = invoke({"verify-receipt", "--receipt", (out / "receipts/0002.json").string(),
                               "--board", (out / "board.json").string(), "--machine-pub",
                               (out / "machine_public_key.json").string(), "--format", "json"});
  EXPECT_EQ(as_json.code, 0);
  EXPECT_TRUE(parse_json_text(as_json.out).at("signature_valid").get<bool>());
}

TEST_F(CliTest, Audit) {
  const fs::path out = run_honest();
  EXPECT_EQ(invoke({"audit", "--board", (out / "board.json").string(), "--config", config("honest.json")}).code, 0);

  const fs::path fraud = dir / "fraud";
  invoke({"run", "--config", config("inject_fraud.json"), "--out", fraud.string()});
  const auto r = invoke({"audit", "--board", (fraud / "board.json").string(), "--config", config("inject_fraud.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(parse_json_text(r.out).at("surplus").get<int>(), 3);

  json board = parse_json_text(testing::read_text(out / "board.json"));
  board["entries"].erase(board["entries"].begin());
  write(dir / "short.json", board.dump());
  const auto missing = invoke({"audit", "--board", (dir / "short.json").string(), "--config", config("honest.json")});
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(parse_json_text(missing.out).at("verdict"), "missing_votes");
}

TEST_F(CliTest, AuthorityCheck) {
  const fs::path out = run_honest();
  auto check = [&](const fs::path& board, const fs::path& batch) {
    return invoke({"authority-check", "--batch", batch.string(), "--board", board.string(), "--config",
                   config("honest.json"), "--machine-pub", (out / "machine_public_key.json").string(),
                   "--authority-key", (out / "authority_key.json").string()});
  };
  const auto ok = check(out / "board.json", out / "bootstrap_batch.json");
  EXPECT_EQ(ok.code, 0) << ok.err << ok.out;

  // Drop every entry of the last candidate: bootstrap entries go missing.
  json board = parse_json_text(testing::read_text(out / "board.json"));
  json kept = json::array();
  for (const auto& e : board["entries"]) {
    if (e["choice"] != "D") kept.push_back(e);
  }
  board["entries"] = kept;
  write(dir / "no_d.json", board.dump());
  const auto bad = check(dir / "no_d.json", out / "bootstrap_batch.json");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(parse_json_text(bad.out).at("missing").size(), 10u);

  json batch = parse_json_text(testing::read_text(out / "bootstrap_batch.json"));
  std::string hex = batch["ciphertext"];
  hex[hex.size() / 2] = hex[hex.size() / 2] == '0' ? '1' : '0';
  batch["ciphertext"] = hex;
  write(dir / "batch.json", batch.dump());
  EXPECT_EQ(check(out / "board.json", dir / "batch.json").code, 3);
}

TEST_F(CliTest, CoerceAndShowBoard) {
  const fs::path out = run_honest();
  const auto c = invoke({"coerce", "--receipts", (out / "receipts").string(), "--order",
                         (out / "order.txt").string(), "--format", "json"});
  EXPECT_EQ(c.code, 0) << c.err;
  const json report = parse_json_text(testing::read_text(out / "coercion_report.json"));
  EXPECT_EQ(parse_json_text(c.out).at("statements").size(), report.at("statements").size());

  const auto s = invoke({"show-board", "--board", (out / "board.json").string(), "--config", config("honest.json")});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out, testing::read_text(out / "board.txt"));
}

}  // namespace
}  // namespace evote
