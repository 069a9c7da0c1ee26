#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace ffp {

// Index into the feature universe: an encoder output coordinate in the
// activation space, or an interned token in the token space.
struct ElementId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const ElementId&) const = default;
};

enum class FeatureSpace { kActivation, kToken };

std::string_view to_string(FeatureSpace space);
FeatureSpace parse_feature_space(std::string_view text);

struct FuzzifyParams {
  std::size_t k = 0;
  double a = 0.8;

  // Throws a parameter error unless k >= 1 and a lies in [0, 1].
  void validate() const;

  bool operator==(const FuzzifyParams&) const = default;
};

struct SimilarityParams {
  double n = 1.0;

  void validate() const;
};

struct FingerprintEntry {
  ElementId element;
  double mu = 0.0;

  bool operator==(const FingerprintEntry&) const = default;
};

/// Ranked, fuzzified top-K feature list.
///
/// Entries are kept in rank order (non-increasing membership, distinct
/// elements). A second copy sorted by element id backs the merge-join used
/// by similarity(), so comparing two fingerprints is O(k1 + k2).
class Fingerprint {
 public:
  Fingerprint() = default;

  // Validates the structural invariants: distinct ids, memberships in [0,1]
  // and non-increasing, at most k entries. Class fingerprints produced by
  // fuzzify() always hold exactly k entries; token-space instance
  // fingerprints may hold fewer when the text is short.
  Fingerprint(FeatureSpace space, std::size_t k,
              std::vector<FingerprintEntry> entries);

  FeatureSpace feature_space() const { return space_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const FingerprintEntry> entries() const { return entries_; }
  std::span<const FingerprintEntry> by_element() const { return by_element_; }

  // Membership of `element`, 0 when absent.
  double membership(ElementId element) const;
  double membership_sum() const;

  bool operator==(const Fingerprint& other) const {
    return space_ == other.space_ && k_ == other.k_ &&
           entries_ == other.entries_;
  }

 private:
  FeatureSpace space_ = FeatureSpace::kActivation;
  std::size_t k_ = 0;
  std::vector<FingerprintEntry> entries_;
  std::vector<FingerprintEntry> by_element_;
};

// Linear rank membership with zero-based rank: 1 - a*rank/k.
double membership(std::size_t rank, std::size_t k, double a);

// Takes the first params.k ids of `ranked` and assigns rank memberships.
Fingerprint fuzzify(std::span<const ElementId> ranked,
                    const FuzzifyParams& params,
                    FeatureSpace space = FeatureSpace::kActivation);

// Like fuzzify() but keeps min(k, ranked.size()) elements. Used for token
// instances, whose vocabulary may be smaller than the library's K.
Fingerprint fuzzify_available(std::span<const ElementId> ranked,
                              const FuzzifyParams& params, FeatureSpace space);

// Sum over shared elements of min(mu_a, mu_b), divided by n.
double similarity(const Fingerprint& fa, const Fingerprint& fb,
                  const SimilarityParams& params = {});

// Calls visit(element, mu_a, mu_b) for every shared element in ascending id
// order. similarity() is the min-sum of exactly these triples.
void for_each_shared(
    const Fingerprint& fa, const Fingerprint& fb,
    const std::function<void(ElementId, double, double)>& visit);

enum class RankBy { kSignedValue, kMagnitude };

std::string_view to_string(RankBy rank_by);
RankBy parse_rank_by(std::string_view text);

// All ids 0..D-1 ordered by value descending, ties by id ascending.
std::vector<ElementId> rank_by_value(std::span<const double> values,
                                     RankBy rank_by = RankBy::kSignedValue);

}  // namespace ffp

template <>
struct std::hash<ffp::ElementId> {
  std::size_t operator()(ffp::ElementId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
