#include "ffp/fingerprint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "ffp/error.hpp"

namespace ffp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kDimension: return "dimension error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kBuild: return "build error";
    case ErrorKind::kClassification: return "classification error";
    case ErrorKind::kEvaluation: return "evaluation error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kIngestion: return "ingestion error";
    case ErrorKind::kUnsupportedVersion: return "unsupported version";
    case ErrorKind::kEmptyDataset: return "empty dataset";
  }
  return "error";
}

std::string_view to_string(FeatureSpace space) {
  return space == FeatureSpace::kActivation ? "activation" : "token";
}

FeatureSpace parse_feature_space(std::string_view text) {
  if (text == "activation") return FeatureSpace::kActivation;
  if (text == "token") return FeatureSpace::kToken;
  fail(ErrorKind::kParameter,
       "unknown feature space '" + std::string(text) + "'");
}

std::string_view to_string(RankBy rank_by) {
  return rank_by == RankBy::kSignedValue ? "signed" : "magnitude";
}

RankBy parse_rank_by(std::string_view text) {
  if (text == "signed") return RankBy::kSignedValue;
  if (text == "magnitude") return RankBy::kMagnitude;
  fail(ErrorKind::kParameter, "unknown ranking '" + std::string(text) + "'");
}

void FuzzifyParams::validate() const {
  if (k < 1) fail(ErrorKind::kParameter, "fingerprint size k must be >= 1");
  if (!(a >= 0.0 && a <= 1.0)) {
    fail(ErrorKind::kParameter,
         "slope a must lie in [0, 1], got " + std::to_string(a));
  }
}

void SimilarityParams::validate() const {
  if (!(n > 0.0) || !std::isfinite(n)) {
    fail(ErrorKind::kParameter, "normalization n must be positive");
  }
}

Fingerprint::Fingerprint(FeatureSpace space, std::size_t k,
                         std::vector<FingerprintEntry> entries)
    : space_(space), k_(k), entries_(std::move(entries)) {
  if (k_ < 1) fail(ErrorKind::kParameter, "fingerprint size k must be >= 1");
  if (entries_.size() > k_) {
    fail(ErrorKind::kDimension, "fingerprint holds " +
                                    std::to_string(entries_.size()) +
                                    " entries, more than k=" +
                                    std::to_string(k_));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double mu = entries_[i].mu;
    if (!(mu >= 0.0 && mu <= 1.0)) {
      fail(ErrorKind::kDomain, "membership outside [0, 1] at rank " +
                                   std::to_string(i));
    }
    if (i > 0 && mu > entries_[i - 1].mu) {
      fail(ErrorKind::kDomain,
           "memberships must be non-increasing (rank " + std::to_string(i) +
               ")");
    }
  }
  by_element_ = entries_;
  std::sort(by_element_.begin(), by_element_.end(),
            [](const auto& l, const auto& r) { return l.element < r.element; });
  for (std::size_t i = 1; i < by_element_.size(); ++i) {
    if (by_element_[i].element == by_element_[i - 1].element) {
      fail(ErrorKind::kDomain, "duplicate element " +
                                   std::to_string(by_element_[i].element.value) +
                                   " in fingerprint");
    }
  }
}

double Fingerprint::membership(ElementId element) const {
  auto it = std::lower_bound(
      by_element_.begin(), by_element_.end(), element,
      [](const FingerprintEntry& e, ElementId id) { return e.element < id; });
  return (it != by_element_.end() && it->element == element) ? it->mu : 0.0;
}

double Fingerprint::membership_sum() const {
  double sum = 0.0;
  for (const auto& e : by_element_) sum += e.mu;
  return sum;
}

double membership(std::size_t rank, std::size_t k, double a) {
  // (k - a*i)/k rather than 1 - a*i/k: identical in exact arithmetic, and for
  // integral a it rounds each rung of the ladder to the nearest double.
  const double kd = static_cast<double>(k);
  return (kd - a * static_cast<double>(rank)) / kd;
}

namespace {

Fingerprint fuzzify_prefix(std::span<const ElementId> ranked, std::size_t take,
                           const FuzzifyParams& params, FeatureSpace space) {
  std::vector<FingerprintEntry> entries;
  entries.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    entries.push_back({ranked[i], membership(i, params.k, params.a)});
  }
  return Fingerprint(space, params.k, std::move(entries));
}

}  // namespace

Fingerprint fuzzify(std::span<const ElementId> ranked,
                    const FuzzifyParams& params, FeatureSpace space) {
  params.validate();
  if (ranked.size() < params.k) {
    fail(ErrorKind::kDimension,
         "need at least k=" + std::to_string(params.k) +
             " ranked elements, got " + std::to_string(ranked.size()));
  }
  return fuzzify_prefix(ranked, params.k, params, space);
}

Fingerprint fuzzify_available(std::span<const ElementId> ranked,
                              const FuzzifyParams& params, FeatureSpace space) {
  params.validate();
  return fuzzify_prefix(ranked, std::min(params.k, ranked.size()), params,
                        space);
}

void for_each_shared(
    const Fingerprint& fa, const Fingerprint& fb,
    const std::function<void(ElementId, double, double)>& visit) {
  if (fa.feature_space() != fb.feature_space()) {
    fail(ErrorKind::kDomain,
         "cannot compare " + std::string(to_string(fa.feature_space())) +
             " and " + std::string(to_string(fb.feature_space())) +
             " fingerprints");
  }
  auto a = fa.by_element();
  auto b = fb.by_element();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].element < b[j].element) {
      ++i;
    } else if (b[j].element < a[i].element) {
      ++j;
    } else {
      visit(a[i].element, a[i].mu, b[j].mu);
      ++i;
      ++j;
    }
  }
}

double similarity(const Fingerprint& fa, const Fingerprint& fb,
                  const SimilarityParams& params) {
  params.validate();
  double sum = 0.0;
  for_each_shared(fa, fb, [&sum](ElementId, double mu_a, double mu_b) {
    sum += std::min(mu_a, mu_b);
  });
  return sum / params.n;
}

std::vector<ElementId> rank_by_value(std::span<const double> values,
                                     RankBy rank_by) {
  if (values.empty()) fail(ErrorKind::kDimension, "cannot rank an empty vector");
  std::vector<double> keys(values.begin(), values.end());
  for (std::size_t d = 0; d < keys.size(); ++d) {
    if (!std::isfinite(keys[d])) {
      fail(ErrorKind::kDomain,
           "non-finite value at coordinate " + std::to_string(d));
    }
    if (rank_by == RankBy::kMagnitude) keys[d] = std::fabs(keys[d]);
  }
  std::vector<ElementId> ids(values.size());
  for (std::size_t d = 0; d < ids.size(); ++d) {
    ids[d] = ElementId{static_cast<std::uint32_t>(d)};
  }
  std::sort(ids.begin(), ids.end(), [&keys](ElementId l, ElementId r) {
    const double kl = keys[l.value];
    const double kr = keys[r.value];
    if (kl != kr) return kl > kr;
    return l < r;
  });
  return ids;
}

}  // namespace ffp
