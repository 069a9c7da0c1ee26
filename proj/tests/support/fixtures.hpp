#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ffp/classify.hpp"
#include "ffp/fingerprint.hpp"
#include "ffp/library.hpp"

namespace ffp::testing {

// Seven published K=10 emotion fingerprints (a = 1 ladder), keyed by
// DailyDialog label names.
FingerprintLibrary emotion_library_k10();

struct SampleCase {
  std::string text;
  Fingerprint fingerprint;
  std::string expected;  // winning class
};

// The three worked classification examples.
std::vector<SampleCase> emotion_samples_k10();

Fingerprint make_fingerprint(const std::vector<std::uint32_t>& ids,
                             const std::vector<double>& mus,
                             FeatureSpace space = FeatureSpace::kActivation);

// Oracles. These deliberately avoid the library's code paths.

// Double loop over both rank-ordered entry lists.
double naive_similarity(const Fingerprint& fa, const Fingerprint& fb, double n);

// Repeated linear max-scan, ties to the lowest index.
std::vector<std::uint32_t> naive_rank(const std::vector<double>& values);

// Counts tp/fp/fn per label directly.
double naive_macro_f1(const std::vector<std::string>& gold,
                      const std::vector<std::string>& predicted,
                      const std::vector<std::string>& labels);

// Random fingerprint over [0, universe) with k entries and ladder slope a.
Fingerprint random_fingerprint(std::mt19937_64& rng, std::size_t k,
                               std::size_t universe, double a);

}  // namespace ffp::testing
