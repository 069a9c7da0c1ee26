#pragma once

#include <map>
#include <string>
#include <vector>

#include "ffp/fingerprint.hpp"
#include "ffp/library.hpp"

namespace ffp {

struct ClassificationResult {
  std::string predicted;
  std::map<std::string, double> scores;
  Fingerprint instance_fp;
  // Every class scored 0; `predicted` is then only the tie-break winner.
  bool no_evidence = false;
};

struct Contribution {
  ElementId element;
  double mu_instance = 0.0;
  double mu_class = 0.0;
  double contribution = 0.0;
};

struct ClassEvidence {
  std::string label;
  std::vector<Contribution> rows;  // contribution descending, then id
  double total = 0.0;              // sum of contributions / n
};

struct Explanation {
  std::string predicted;
  double n = 1.0;
  bool no_evidence = false;
  std::vector<ClassEvidence> per_class;  // library label order
};

// Scores the instance against every class; the highest score wins, with
// ties going to the lexicographically smallest label.
ClassificationResult classify(const Fingerprint& instance_fp,
                              const FingerprintLibrary& library,
                              const SimilarityParams& params = {});

Explanation explain(const Fingerprint& instance_fp,
                    const FingerprintLibrary& library,
                    const SimilarityParams& params = {});

// Classifies many fingerprints, fanning out across threads; result order
// matches input order.
std::vector<ClassificationResult> classify_batch(
    const std::vector<Fingerprint>& instances, const FingerprintLibrary& library,
    const SimilarityParams& params = {}, std::size_t threads = 1);

}  // namespace ffp
