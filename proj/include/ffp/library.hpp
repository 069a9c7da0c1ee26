#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffp/dataset.hpp"
#include "ffp/fingerprint.hpp"

namespace ffp {

/// Per-class accumulated activations: sums[d] is the sum over the class's
/// training vectors of coordinate d.
struct ClassAccumulator {
  std::string label;
  std::vector<double> sums;
  std::size_t count = 0;

  void add(std::span<const double> values);
};

struct BuildOptions {
  RankBy rank_by = RankBy::kSignedValue;
  std::size_t threads = 1;
};

/// Class label -> fingerprint, plus everything needed to fingerprint new
/// instances the same way the classes were fingerprinted.
class FingerprintLibrary {
 public:
  FingerprintLibrary() = default;

  // `dimension` is D for the activation space and 0 for the token space.
  // Throws unless there is at least one class and every fingerprint shares
  // the library's k and feature space.
  FingerprintLibrary(FeatureSpace space, std::size_t dimension,
                     FuzzifyParams params, RankBy rank_by,
                     std::map<std::string, Fingerprint> classes,
                     Vocabulary vocabulary = {});

  FeatureSpace feature_space() const { return space_; }
  std::size_t dimension() const { return dimension_; }
  const FuzzifyParams& params() const { return params_; }
  RankBy rank_by() const { return rank_by_; }
  const std::map<std::string, Fingerprint>& classes() const { return classes_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  std::vector<std::string> labels() const;
  std::size_t size() const { return classes_.size(); }

  const Fingerprint& at(const std::string& label) const;

  bool operator==(const FingerprintLibrary&) const = default;

 private:
  FeatureSpace space_ = FeatureSpace::kActivation;
  std::size_t dimension_ = 0;
  FuzzifyParams params_;
  RankBy rank_by_ = RankBy::kSignedValue;
  std::map<std::string, Fingerprint> classes_;
  Vocabulary vocabulary_;
};

ClassAccumulator accumulate_class(std::span<const LabeledVector> examples);

Fingerprint build_activation_fingerprint(const ClassAccumulator& acc,
                                         const FuzzifyParams& params,
                                         RankBy rank_by = RankBy::kSignedValue);

// Distinct tokens of a class ordered by total count descending, ties by
// token ascending.
std::vector<std::string> rank_tokens(std::span<const LabeledTokenBag> examples);

// Interns the class's top-k tokens into `vocabulary`.
Fingerprint build_token_fingerprint(std::span<const LabeledTokenBag> examples,
                                    const FuzzifyParams& params,
                                    Vocabulary& vocabulary);

FingerprintLibrary build_library(const ActivationDataset& data,
                                 const FuzzifyParams& params,
                                 const BuildOptions& options = {});
FingerprintLibrary build_library(const TokenDataset& data,
                                 const FuzzifyParams& params,
                                 const BuildOptions& options = {});

// One accumulator per label, in label order. Classes accumulate
// independently and may run on separate threads.
std::vector<ClassAccumulator> accumulate_by_class(const ActivationDataset& data,
                                                  std::size_t threads = 1);

Fingerprint instance_fingerprint(std::span<const double> values,
                                 const FuzzifyParams& params,
                                 RankBy rank_by = RankBy::kSignedValue);

// Fingerprints an instance exactly as `library` fingerprinted its classes.
// Throws a dimension error when the vector length differs from the
// library's D.
Fingerprint instance_fingerprint(std::span<const double> values,
                                 const FingerprintLibrary& library);

// Token instances: tokens unknown to the library receive fresh ids past the
// vocabulary so they can never match a class element.
Fingerprint instance_fingerprint(std::span<const std::string> tokens,
                                 const FingerprintLibrary& library);

// Maps ranked tokens onto ids; unknown tokens get ids from vocabulary.size()
// upward in rank order.
std::vector<ElementId> token_ids(std::span<const std::string> ranked,
                                 const Vocabulary& vocabulary);

}  // namespace ffp
