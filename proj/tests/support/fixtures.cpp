#include "fixtures.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ffp::testing {

namespace {

const std::vector<double> kLadder = {1.0, 0.9, 0.8, 0.7, 0.6,
                                     0.5, 0.4, 0.3, 0.2, 0.1};

}  // namespace

Fingerprint make_fingerprint(const std::vector<std::uint32_t>& ids,
                             const std::vector<double>& mus,
                             FeatureSpace space) {
  std::vector<FingerprintEntry> entries;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    entries.push_back({ElementId{ids[i]}, mus[i]});
  }
  return Fingerprint(space, ids.size(), std::move(entries));
}

FingerprintLibrary emotion_library_k10() {
  const std::map<std::string, std::vector<std::uint32_t>> rows = {
      {"neutral", {217, 644, 541, 718, 401, 330, 426, 78, 580, 114}},
      {"anger", {8, 679, 204, 292, 651, 573, 111, 624, 184, 309}},
      {"disgust", {588, 573, 27, 154, 331, 67, 561, 5, 503, 446}},
      {"fear", {588, 313, 655, 406, 736, 349, 624, 371, 292, 8}},
      {"happiness", {588, 585, 388, 600, 767, 319, 741, 561, 473, 139}},
      {"sadness", {371, 588, 5, 156, 4, 93, 550, 402, 519, 422}},
      {"surprise", {691, 588, 97, 573, 530, 535, 654, 384, 366, 613}},
  };
  std::map<std::string, Fingerprint> classes;
  for (const auto& [label, ids] : rows) {
    classes.emplace(label, make_fingerprint(ids, kLadder));
  }
  return FingerprintLibrary(FeatureSpace::kActivation, 768, {10, 1.0},
                            RankBy::kSignedValue, std::move(classes));
}

std::vector<SampleCase> emotion_samples_k10() {
  return {
      {"Sorry , sir . It's the sale price .",
       make_fingerprint({5, 371, 156, 550, 93, 4, 232, 424, 402, 442}, kLadder),
       "sadness"},
      {"You still have not given me those files I 've asked you for .",
       make_fingerprint({8, 679, 309, 624, 292, 76, 134, 204, 560, 459}, kLadder),
       "anger"},
      {"Don't forget to give me the files I've asked you for",
       make_fingerprint({330, 644, 541, 217, 114, 426, 211, 718, 401, 553}, kLadder),
       "neutral"},
  };
}

double naive_similarity(const Fingerprint& fa, const Fingerprint& fb,
                        double n) {
  double sum = 0.0;
  for (const auto& a : fa.entries()) {
    for (const auto& b : fb.entries()) {
      if (a.element.value == b.element.value) sum += std::min(a.mu, b.mu) / n;
    }
  }
  return sum;
}

std::vector<std::uint32_t> naive_rank(const std::vector<double>& values) {
  std::vector<bool> used(values.size(), false);
  std::vector<std::uint32_t> order;
  for (std::size_t step = 0; step < values.size(); ++step) {
    std::size_t best = values.size();
    for (std::size_t d = 0; d < values.size(); ++d) {
      if (used[d]) continue;
      if (best == values.size() || values[d] > values[best]) best = d;
    }
    used[best] = true;
    order.push_back(static_cast<std::uint32_t>(best));
  }
  return order;
}

double naive_macro_f1(const std::vector<std::string>& gold,
                      const std::vector<std::string>& predicted,
                      const std::vector<std::string>& labels) {
  double total = 0.0;
  for (const auto& label : labels) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const bool g = gold[i] == label;
      const bool p = predicted[i] == label;
      if (g && p) tp += 1;
      if (!g && p) fp += 1;
      if (g && !p) fn += 1;
    }
    // F1 = 2tp / (2tp + fp + fn), 0 when the denominator vanishes.
    total += (2 * tp + fp + fn) > 0 ? 2 * tp / (2 * tp + fp + fn) : 0.0;
  }
  return total / static_cast<double>(labels.size());
}

Fingerprint random_fingerprint(std::mt19937_64& rng, std::size_t k,
                               std::size_t universe, double a) {
  std::vector<std::uint32_t> all(universe);
  std::iota(all.begin(), all.end(), 0u);
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<ElementId> ranked;
  for (std::size_t i = 0; i < k; ++i) ranked.push_back({all[i]});
  return fuzzify(ranked, {k, a});
}

}  // namespace ffp::testing
