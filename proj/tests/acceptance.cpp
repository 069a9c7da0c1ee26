// Acceptance checks: one PASS/FAIL/SKIP line per criterion. Exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "ffp/classify.hpp"
#include "ffp/eval.hpp"
#include "ffp/io.hpp"
#include "ffp/synthetic.hpp"
#include "support/fixtures.hpp"
#include "support/properties.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ffp;

struct Outcome {
  enum { kPass, kFail, kSkip } status = kPass;
  std::string detail;
};

Outcome pass(std::string d) { return {Outcome::kPass, std::move(d)}; }
Outcome failed(std::string d) { return {Outcome::kFail, std::move(d)}; }
Outcome skip(std::string d) { return {Outcome::kSkip, std::move(d)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

Outcome golden_similarity() {
  const auto library = testing::emotion_library_k10();
  const auto sample = testing::emotion_samples_k10()[0].fingerprint;
  const double s = similarity(sample, library.at("disgust"), {1.0});
  const std::string d = "sim(sample 1, disgust) = " + fmt(s, 12);
  return std::abs(s - 0.3) <= 1e-9 ? pass(d) : failed(d);
}

Outcome argmax_agreement() {
  const auto library = testing::emotion_library_k10();
  std::string got;
  bool ok = true;
  for (const auto& sample : testing::emotion_samples_k10()) {
    const auto r = classify(sample.fingerprint, library);
    got += (got.empty() ? "" : "/") + r.predicted;
    ok = ok && r.predicted == sample.expected;
  }
  return ok ? pass(got) : failed(got);
}

Outcome membership_ladder() {
  const auto library = testing::emotion_library_k10();
  for (const auto& [label, fp] : library.classes()) {
    for (std::size_t i = 0; i < 10; ++i) {
      if (fp.entries()[i].mu != membership(i, 10, 1.0)) {
        return failed(label + " row differs from the computed ladder");
      }
    }
  }
  const double expected[] = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
  for (std::size_t i = 0; i < 10; ++i) {
    if (membership(i, 10, 1.0) != expected[i]) {
      return failed("K=10 a=1 rank " + std::to_string(i) + " = " +
                    fmt(membership(i, 10, 1.0), 17));
    }
  }
  const double first = membership(0, 300, 0.8);
  const double last = membership(299, 300, 0.8);
  const std::string d = "K=300 a=0.8: mu(0)=" + fmt(first) + " mu(299)=" + fmt(last, 10);
  // 0.2026667 is the exact 1 - 0.8*299/300 rounded to 7 places; the tight
  // tolerance applies to the exact value, the rounded one to its own digits.
  const double exact = 1.0 - 0.8 * 299.0 / 300.0;
  const bool ok = first == 1.0 && std::abs(last - exact) <= 1e-9 &&
                  std::abs(last - 0.2026667) <= 5e-8;
  return ok ? pass(d) : failed(d);
}

Outcome property_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = testing::run_property_suite(20261018, 1000);
  const double secs = seconds_since(t0);
  std::size_t cases = 0;
  for (const auto& r : results) {
    if (!r.passed) return failed(r.name + ": " + r.detail);
    cases += r.cases;
  }
  const std::string d = std::to_string(results.size()) + " properties, " +
                        std::to_string(cases) + " cases, " + fmt(secs, 3) + " s";
  return secs < 60.0 ? pass(d) : failed(d);
}

Outcome synthetic_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  SyntheticSpec spec;  // 7 x 768, block 40, signal 1, noise 0.1, 100/20
  const auto data = make_separable(spec);
  const std::vector<std::size_t> grid = {1, 50};
  const auto sweep = sweep_k(data.train, data.test, grid, 0.8);
  const double secs = seconds_since(t0);
  const double f1 = sweep.points[0].macro_f1;
  const double f50 = sweep.points[1].macro_f1;
  const std::string d = "F1(K=1)=" + fmt(f1, 4) + " F1(K=50)=" + fmt(f50, 4) + ", " +
                        fmt(secs, 3) + " s";
  return f50 >= 0.95 && f50 > f1 && secs < 10.0 ? pass(d) : failed(d);
}

Outcome macro_f1_oracle() {
  const std::vector<std::string> set = {"A", "B", "C"};
  const std::vector<std::string> gold = {"A", "A", "B", "C"};
  const std::vector<std::string> pred = {"A", "B", "B", "B"};
  const double hand = macro_f1(gold, pred, set).macro_f1;
  const std::vector<std::string> g2 = {"A", "A", "B", "B"};
  const std::vector<std::string> inv = {"B", "B", "A", "A"};
  const std::vector<std::string> ab = {"A", "B"};
  const double perfect = macro_f1(g2, g2, ab).macro_f1;
  const double inverted = macro_f1(g2, inv, ab).macro_f1;
  const std::string d = "hand=" + fmt(hand, 6) + " perfect=" + fmt(perfect) +
                        " inverted=" + fmt(inverted);
  return std::abs(hand - 0.3889) <= 1e-4 && perfect == 1.0 && inverted == 0.0
             ? pass(d)
             : failed(d);
}

Outcome dailydialog_ingestion() {
  const char* env = std::getenv("FFP_DAILYDIALOG_DIR");
  const fs::path dir = env ? fs::path(env)
                           : fs::path(FFP_TEST_DATA_DIR).parent_path().parent_path() /
                                 "data" / "dailydialog";
  if (!fs::is_directory(dir)) return skip("dataset not found at " + dir.string());
  const auto corpus = io::load_dailydialog(dir);
  const std::size_t dialogues = corpus.dialogue_count();
  const std::size_t utterances = corpus.utterance_count();
  std::string d = std::to_string(dialogues) + " dialogues, " +
                  std::to_string(utterances) + " utterances";
  if (dialogues != 13118 || utterances != 102979) return failed(d);
  const std::map<std::string, double> expected = {
      {"neutral", 0.831}, {"happiness", 0.125}, {"anger", 0.010}, {"disgust", 0.003},
      {"fear", 0.002},    {"sadness", 0.011},   {"surprise", 0.018}};
  const auto counts = corpus.label_counts();
  for (const auto& [label, p] : expected) {
    const auto it = counts.find(label);
    const double got = it == counts.end() ? 0.0 : static_cast<double>(it->second) / utterances;
    if (std::abs(got - p) > 0.001 + 1e-12) {
      return failed(d + "; " + label + " proportion " + fmt(got, 4));
    }
  }
  return pass(d + ", label proportions within 0.1%");
}

Outcome library_round_trip() {
  SyntheticSpec spec;
  spec.train_per_class = 5;
  spec.test_per_class = 0;
  const auto train = make_separable(spec).train;
  std::vector<FingerprintLibrary> libraries = {
      build_library(train, {50, 0.8}),
      build_library(train, {300, 1.0 / 3.0}, {RankBy::kMagnitude, 1}),
      build_library(TokenDataset{{{"1", "x", tokenize("alpha beta beta gamma")},
                                  {"2", "y", tokenize("delta epsilon delta")}}},
                    {2, 0.8}),
      testing::emotion_library_k10()};
  for (const auto& lib : libraries) {
    if (io::library_from_json(io::library_to_json(lib)) != lib) {
      return failed("round-trip changed a library");
    }
  }
  const fs::path golden = fs::path(FFP_TEST_DATA_DIR) / "emotion_library_k10.json";
  const auto loaded = io::load_library(golden);
  if (loaded != testing::emotion_library_k10()) return failed("golden fixture differs");
  std::ifstream in(golden, std::ios::binary);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  if (io::library_to_json(loaded) != bytes.str()) {
    return failed("golden fixture does not re-serialize byte-identically");
  }
  return pass(std::to_string(libraries.size()) + " libraries field-exact, golden fixture intact");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"similarity golden case", golden_similarity},
      {"argmax agreement", argmax_agreement},
      {"membership ladder", membership_ladder},
      {"property suite", property_suite},
      {"synthetic separable oracle", synthetic_oracle},
      {"macro-F1 oracle", macro_f1_oracle},
      {"DailyDialog ingestion", dailydialog_ingestion},
      {"library round-trip", library_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = failed(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Outcome::kPass   ? "PASS"
                      : o.status == Outcome::kSkip ? "SKIP"
                                                   : "FAIL";
    if (o.status == Outcome::kFail) ++failures;
    std::cout << "[" << tag << "] " << (i + 1) << ". " << criteria[i].first << ": "
              << o.detail << "\n";
  }
  return failures == 0 ? 0 : 1;
}
