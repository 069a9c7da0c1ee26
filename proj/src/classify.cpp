#include "ffp/classify.hpp"

#include <algorithm>

#include "ffp/error.hpp"
#include "ffp/parallel.hpp"

namespace ffp {

namespace {

void check_compatible(const Fingerprint& instance_fp,
                      const FingerprintLibrary& library) {
  if (library.size() == 0) {
    fail(ErrorKind::kClassification, "cannot classify against an empty library");
  }
  if (instance_fp.feature_space() != library.feature_space()) {
    fail(ErrorKind::kDomain,
         "instance is a " + std::string(to_string(instance_fp.feature_space())) +
             " fingerprint, library is " +
             std::string(to_string(library.feature_space())));
  }
  if (library.feature_space() == FeatureSpace::kActivation) {
    for (const auto& e : instance_fp.entries()) {
      if (e.element.value >= library.dimension()) {
        fail(ErrorKind::kDimension,
             "instance element " + std::to_string(e.element.value) +
                 " outside library dimension " +
                 std::to_string(library.dimension()));
      }
    }
  }
}

}  // namespace

ClassificationResult classify(const Fingerprint& instance_fp,
                              const FingerprintLibrary& library,
                              const SimilarityParams& params) {
  params.validate();
  check_compatible(instance_fp, library);
  ClassificationResult result;
  result.instance_fp = instance_fp;
  double best = -1.0;
  // std::map iterates labels ascending, so the strict comparison keeps the
  // smallest label among equal maxima.
  for (const auto& [label, class_fp] : library.classes()) {
    const double score = similarity(instance_fp, class_fp, params);
    result.scores.emplace(label, score);
    if (score > best) {
      best = score;
      result.predicted = label;
    }
  }
  result.no_evidence = best == 0.0;
  return result;
}

Explanation explain(const Fingerprint& instance_fp,
                    const FingerprintLibrary& library,
                    const SimilarityParams& params) {
  const auto result = classify(instance_fp, library, params);
  Explanation out;
  out.predicted = result.predicted;
  out.n = params.n;
  out.no_evidence = result.no_evidence;
  for (const auto& [label, class_fp] : library.classes()) {
    ClassEvidence evidence{label, {}, result.scores.at(label)};
    for_each_shared(instance_fp, class_fp,
                    [&](ElementId id, double mu_inst, double mu_class) {
                      evidence.rows.push_back(
                          {id, mu_inst, mu_class, std::min(mu_inst, mu_class)});
                    });
    std::stable_sort(evidence.rows.begin(), evidence.rows.end(),
                     [](const Contribution& l, const Contribution& r) {
                       return l.contribution > r.contribution;
                     });
    out.per_class.push_back(std::move(evidence));
  }
  return out;
}

std::vector<ClassificationResult> classify_batch(
    const std::vector<Fingerprint>& instances, const FingerprintLibrary& library,
    const SimilarityParams& params, std::size_t threads) {
  std::vector<ClassificationResult> results(instances.size());
  parallel_for(instances.size(), threads, [&](std::size_t i) {
    results[i] = classify(instances[i], library, params);
  });
  return results;
}

}  // namespace ffp
