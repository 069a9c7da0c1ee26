#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "ffp/io.hpp"

namespace ffp {
namespace {

namespace fs = std::filesystem;

const fs::path kData = FFP_TEST_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run ffp_run(std::vector<std::string> args) {
  args.insert(args.begin(), "ffp");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ffp_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
    synth_ = (dir_ / "synth.jsonl").string();
    auto r = ffp_run({"synth", "--seed", "5", "--out", synth_,
                      "--train-per-class", "30", "--test-per-class", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string synth_;
};

TEST_F(CliTest, BuildWritesSevenRankedLists) {
  const auto lib_path = path("lib.json");
  auto r = ffp_run({"build", "--train", synth_, "--k", "10", "--a", "1", "--out", lib_path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lib = io::load_library(lib_path);
  EXPECT_EQ(lib.size(), 7u);
  for (const auto& [label, fp] : lib.classes()) EXPECT_EQ(fp.size(), 10u);
  EXPECT_EQ(lib.params().a, 1.0);
}

TEST_F(CliTest, BuildIsByteIdenticalAcrossRuns) {
  ASSERT_EQ(ffp_run({"build", "--train", synth_, "--k", "25", "--out", path("a.json")}).code, 0);
  ASSERT_EQ(ffp_run({"build", "--train", synth_, "--k", "25", "--out", path("b.json"),
                     "--threads", "3"}).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, BuildErrorsMapToExitCodes) {
  auto too_big = ffp_run({"build", "--train", synth_, "--k", "1000", "--out", path("x.json")});
  EXPECT_EQ(too_big.code, cli::kExitParameter) << too_big.err;
  std::ofstream(path("empty.jsonl")) << "";
  auto empty = ffp_run({"build", "--train", path("empty.jsonl"), "--k", "5", "--out", path("x.json")});
  EXPECT_EQ(empty.code, cli::kExitData);
  auto missing = ffp_run({"build", "--train", synth_, "--out", path("x.json")});
  EXPECT_EQ(missing.code, cli::kExitUsage);
  auto bad_a = ffp_run({"build", "--train", synth_, "--k", "5", "--a", "2", "--out", path("x.json")});
  EXPECT_EQ(bad_a.code, cli::kExitParameter);
  auto no_file = ffp_run({"build", "--train", path("nope.jsonl"), "--k", "5", "--out", path("x.json")});
  EXPECT_EQ(no_file.code, cli::kExitData);
  EXPECT_EQ(ffp_run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_FALSE(fs::exists(path("x.json")));
}

TEST_F(CliTest, ClassifyWorkedExamples) {
  auto r = ffp_run({"classify", "--library", (kData / "emotion_library_k10.json").string(),
                    "--instances", (kData / "emotion_samples_k10.jsonl").string(),
                    "--format", "json", "--explain"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::vector<std::string> predicted;
  std::string line;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    predicted.push_back(j["predicted"]);
    for (const auto& [label, score] : j["scores"].items()) {
      double sum = 0.0;
      for (const auto& row : j["explanation"]["per_class"][label]["rows"]) {
        sum += row["contribution"].get<double>();
      }
      EXPECT_NEAR(sum / j["explanation"]["n"].get<double>(), score.get<double>(), 1e-9);
      EXPECT_NEAR(j["explanation"]["per_class"][label]["total"].get<double>(),
                  score.get<double>(), 1e-9);
    }
  }
  EXPECT_EQ(predicted, (std::vector<std::string>{"sadness", "anger", "neutral"}));
}

TEST_F(CliTest, ClassifyTextExplanation) {
  auto r = ffp_run({"classify", "--library", (kData / "emotion_library_k10.json").string(),
                    "--instances", (kData / "emotion_samples_k10.jsonl").string(),
                    "--explain"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("predicted sadness"), std::string::npos);
  EXPECT_NE(r.out.find("disgust (total 0.3): 5[1^0.3=0.3]"), std::string::npos) << r.out;
}

TEST_F(CliTest, ClassifyDimensionMismatch) {
  const auto small = path("small.jsonl");
  ASSERT_EQ(ffp_run({"synth", "--out", small, "--dim", "300", "--train-per-class", "2",
                     "--test-per-class", "1"}).code, 0);
  ASSERT_EQ(ffp_run({"build", "--train", synth_, "--k", "10", "--out", path("lib.json")}).code, 0);
  auto r = ffp_run({"classify", "--library", path("lib.json"), "--test", small});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("dimension"), std::string::npos) << r.err;
}

TEST_F(CliTest, EvaluateWritesReportsInEmotionOrder) {
  ASSERT_EQ(ffp_run({"build", "--train", synth_, "--k", "50", "--out", path("lib.json")}).code, 0);
  auto r = ffp_run({"evaluate", "--library", path("lib.json"), "--test", synth_,
                    "--out", path("report")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(slurp(path("report.json")));
  std::vector<std::string> order;
  for (const auto& [label, v] : j["per_class"].items()) order.push_back(label);
  EXPECT_EQ(order, (std::vector<std::string>{"anger", "disgust", "fear", "happiness",
                                             "sadness", "surprise", "neutral"}));
  EXPECT_GE(j["macro_f1"].get<double>(), 0.95);
  EXPECT_EQ(slurp(path("report.txt")), r.out);
}

TEST_F(CliTest, EvaluateFromTrainAndAggregateRuns) {
  const auto other = path("synth2.jsonl");
  ASSERT_EQ(ffp_run({"synth", "--seed", "6", "--out", other, "--train-per-class", "30",
                     "--test-per-class", "10"}).code, 0);
  auto r = ffp_run({"evaluate", "--train", synth_, "--train", other, "--test", synth_,
                    "--test", other, "--k", "50", "--out", path("agg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("agg.json")));
  EXPECT_EQ(j["runs"], 2);
  EXPECT_NE(r.out.find("mean over 2 runs"), std::string::npos);
}

TEST_F(CliTest, SweepEmitsTheFullGrid) {
  auto r = ffp_run({"sweep", "--train", synth_, "--test", synth_, "--out", path("sweep")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("sweep.json")));
  ASSERT_EQ(j["points"].size(), 10u);
  std::vector<std::size_t> ks;
  for (const auto& p : j["points"]) ks.push_back(p["k"]);
  EXPECT_EQ(ks, (std::vector<std::size_t>{1, 5, 10, 25, 50, 100, 150, 200, 300, 400}));
  EXPECT_NE(r.out.find("selected K"), std::string::npos);
}

TEST_F(CliTest, SweepCustomGridAndConfigFile) {
  std::ofstream(path("sweep.toml")) << "[sweep]\nk-grid = [1, 50]\na = 0.5\n";
  auto r = ffp_run({"--config", path("sweep.toml"), "sweep", "--train", synth_, "--test",
                    synth_, "--out", path("s")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("s.json")));
  EXPECT_EQ(j["points"].size(), 2u);
  auto flags = ffp_run({"sweep", "--train", synth_, "--test", synth_, "--k-grid", "1,5,10"});
  EXPECT_EQ(flags.code, 0) << flags.err;
}

TEST_F(CliTest, ConvertAndTokenPipeline) {
  auto r = ffp_run({"convert", "--dailydialog", (kData / "dailydialog_mini").string(),
                    "--out", path("utt.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("7 utterances from 3 dialogues"), std::string::npos);
  auto b = ffp_run({"build", "--mode", "token", "--train", path("utt.jsonl"), "--k", "2",
                    "--out", path("tok.json")});
  ASSERT_EQ(b.code, 0) << b.err;
  auto c = ffp_run({"classify", "--library", path("tok.json"), "--test", path("utt.jsonl"),
                    "--format", "json"});
  EXPECT_EQ(c.code, 0) << c.err;
  auto bad = ffp_run({"convert", "--dailydialog", path("none"), "--out", path("u.jsonl")});
  EXPECT_EQ(bad.code, cli::kExitData);
}

TEST_F(CliTest, InspectPrintsClassRows) {
  auto r = ffp_run({"inspect", "--library", (kData / "emotion_library_k10.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("FFP_neutral = {(217,1), (644,0.9), (541,0.8)"), std::string::npos)
      << r.out;
  const auto first_anger = r.out.find("FFP_anger");
  const auto first_neutral = r.out.find("FFP_neutral");
  EXPECT_LT(first_anger, first_neutral);
}

TEST_F(CliTest, SynthIsDeterministic) {
  ASSERT_EQ(ffp_run({"synth", "--seed", "5", "--out", path("again.jsonl"),
                     "--train-per-class", "30", "--test-per-class", "10"}).code, 0);
  EXPECT_EQ(slurp(path("again.jsonl")), slurp(synth_));
}

}  // namespace
}  // namespace ffp
