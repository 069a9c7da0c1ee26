#include "ffp/library.hpp"

#include <algorithm>
#include <unordered_map>

#include "ffp/error.hpp"
#include "ffp/parallel.hpp"

namespace ffp {

void ClassAccumulator::add(std::span<const double> values) {
  if (count == 0 && sums.empty()) sums.assign(values.size(), 0.0);
  if (values.size() != sums.size()) {
    fail(ErrorKind::kDimension,
         "vector of length " + std::to_string(values.size()) +
             " added to accumulator of dimension " +
             std::to_string(sums.size()));
  }
  for (std::size_t d = 0; d < sums.size(); ++d) sums[d] += values[d];
  ++count;
}

FingerprintLibrary::FingerprintLibrary(FeatureSpace space,
                                       std::size_t dimension,
                                       FuzzifyParams params, RankBy rank_by,
                                       std::map<std::string, Fingerprint> classes,
                                       Vocabulary vocabulary)
    : space_(space),
      dimension_(dimension),
      params_(params),
      rank_by_(rank_by),
      classes_(std::move(classes)),
      vocabulary_(std::move(vocabulary)) {
  params_.validate();
  if (classes_.empty()) fail(ErrorKind::kBuild, "library has no classes");
  if (space_ == FeatureSpace::kActivation && params_.k > dimension_) {
    fail(ErrorKind::kParameter, "k=" + std::to_string(params_.k) +
                                    " exceeds dimension " +
                                    std::to_string(dimension_));
  }
  for (const auto& [label, fp] : classes_) {
    if (fp.feature_space() != space_) {
      fail(ErrorKind::kDomain, "class '" + label + "' has feature space " +
                                   std::string(to_string(fp.feature_space())));
    }
    if (fp.k() != params_.k || fp.size() != params_.k) {
      fail(ErrorKind::kBuild, "class '" + label + "' fingerprint has " +
                                  std::to_string(fp.size()) +
                                  " entries, library k=" +
                                  std::to_string(params_.k));
    }
    for (const auto& e : fp.entries()) {
      const bool out_of_range =
          space_ == FeatureSpace::kActivation
              ? e.element.value >= dimension_
              : e.element.value >= vocabulary_.size();
      if (out_of_range) {
        fail(ErrorKind::kDimension,
             "class '" + label + "' references element " +
                 std::to_string(e.element.value) + " outside the universe");
      }
    }
  }
}

std::vector<std::string> FingerprintLibrary::labels() const {
  std::vector<std::string> out;
  out.reserve(classes_.size());
  for (const auto& [label, fp] : classes_) out.push_back(label);
  return out;
}

const Fingerprint& FingerprintLibrary::at(const std::string& label) const {
  auto it = classes_.find(label);
  if (it == classes_.end()) {
    fail(ErrorKind::kDomain, "no class '" + label + "' in library");
  }
  return it->second;
}

ClassAccumulator accumulate_class(std::span<const LabeledVector> examples) {
  if (examples.empty()) fail(ErrorKind::kBuild, "no examples to accumulate");
  ClassAccumulator acc;
  acc.label = examples.front().label;
  acc.sums.assign(examples.front().values.size(), 0.0);
  for (const auto& ex : examples) {
    if (ex.label != acc.label) {
      fail(ErrorKind::kBuild, "mixed labels '" + acc.label + "' and '" +
                                  ex.label + "' in one class");
    }
    if (ex.values.size() != acc.sums.size()) {
      fail(ErrorKind::kDimension,
           "instance '" + ex.id + "' has " + std::to_string(ex.values.size()) +
               " values, expected " + std::to_string(acc.sums.size()));
    }
    acc.add(ex.values);
  }
  return acc;
}

Fingerprint build_activation_fingerprint(const ClassAccumulator& acc,
                                         const FuzzifyParams& params,
                                         RankBy rank_by) {
  params.validate();
  if (acc.count == 0) {
    fail(ErrorKind::kBuild, "class '" + acc.label + "' has no examples");
  }
  if (params.k > acc.sums.size()) {
    fail(ErrorKind::kParameter, "k=" + std::to_string(params.k) +
                                    " exceeds dimension " +
                                    std::to_string(acc.sums.size()));
  }
  const auto ranked = rank_by_value(acc.sums, rank_by);
  return fuzzify(ranked, params, FeatureSpace::kActivation);
}

std::vector<std::string> rank_tokens(std::span<const LabeledTokenBag> examples) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& ex : examples) {
    for (const auto& tok : ex.tokens) ++counts[tok];
  }
  std::vector<std::pair<std::string, std::size_t>> ordered(counts.begin(),
                                                           counts.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second > r.second;
    return l.first < r.first;
  });
  std::vector<std::string> ranked;
  ranked.reserve(ordered.size());
  for (auto& [tok, count] : ordered) ranked.push_back(std::move(tok));
  return ranked;
}

Fingerprint build_token_fingerprint(std::span<const LabeledTokenBag> examples,
                                    const FuzzifyParams& params,
                                    Vocabulary& vocabulary) {
  params.validate();
  if (examples.empty()) fail(ErrorKind::kBuild, "no examples to fingerprint");
  for (const auto& ex : examples) {
    if (ex.label != examples.front().label) {
      fail(ErrorKind::kBuild, "mixed labels '" + examples.front().label +
                                  "' and '" + ex.label + "' in one class");
    }
  }
  const auto ranked = rank_tokens(examples);
  if (ranked.size() < params.k) {
    fail(ErrorKind::kBuild, "class '" + examples.front().label + "' has " +
                                std::to_string(ranked.size()) +
                                " distinct tokens, fewer than k=" +
                                std::to_string(params.k));
  }
  std::vector<ElementId> ids;
  ids.reserve(params.k);
  for (std::size_t i = 0; i < params.k; ++i) {
    ids.push_back(vocabulary.intern(ranked[i]));
  }
  return fuzzify(ids, params, FeatureSpace::kToken);
}

std::vector<ClassAccumulator> accumulate_by_class(const ActivationDataset& data,
                                                  std::size_t threads) {
  if (data.empty()) fail(ErrorKind::kBuild, "cannot build from an empty dataset");
  data.validate();
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < data.instances.size(); ++i) {
    members[data.instances[i].label].push_back(i);
  }
  std::vector<const std::vector<std::size_t>*> groups;
  std::vector<ClassAccumulator> accs;
  for (const auto& [label, idx] : members) {
    accs.push_back({label, {}, 0});
    groups.push_back(&idx);
  }
  parallel_for(accs.size(), threads, [&](std::size_t c) {
    accs[c].sums.assign(data.dimension, 0.0);
    for (std::size_t i : *groups[c]) accs[c].add(data.instances[i].values);
  });
  return accs;
}

FingerprintLibrary build_library(const ActivationDataset& data,
                                 const FuzzifyParams& params,
                                 const BuildOptions& options) {
  params.validate();
  if (data.empty()) fail(ErrorKind::kBuild, "cannot build from an empty dataset");
  if (params.k > data.dimension) {
    fail(ErrorKind::kParameter, "k=" + std::to_string(params.k) +
                                    " exceeds dimension " +
                                    std::to_string(data.dimension));
  }
  const auto accs = accumulate_by_class(data, options.threads);
  std::map<std::string, Fingerprint> classes;
  for (const auto& acc : accs) {
    classes.emplace(acc.label,
                    build_activation_fingerprint(acc, params, options.rank_by));
  }
  return FingerprintLibrary(FeatureSpace::kActivation, data.dimension, params,
                            options.rank_by, std::move(classes));
}

FingerprintLibrary build_library(const TokenDataset& data,
                                 const FuzzifyParams& params,
                                 const BuildOptions& options) {
  params.validate();
  if (data.empty()) fail(ErrorKind::kBuild, "cannot build from an empty dataset");
  std::map<std::string, std::vector<LabeledTokenBag>> by_label;
  for (const auto& inst : data.instances) by_label[inst.label].push_back(inst);
  Vocabulary vocabulary;
  std::map<std::string, Fingerprint> classes;
  for (const auto& [label, bags] : by_label) {
    classes.emplace(label, build_token_fingerprint(bags, params, vocabulary));
  }
  return FingerprintLibrary(FeatureSpace::kToken, 0, params, options.rank_by,
                            std::move(classes), std::move(vocabulary));
}

Fingerprint instance_fingerprint(std::span<const double> values,
                                 const FuzzifyParams& params, RankBy rank_by) {
  params.validate();
  if (params.k > values.size()) {
    fail(ErrorKind::kParameter, "k=" + std::to_string(params.k) +
                                    " exceeds dimension " +
                                    std::to_string(values.size()));
  }
  return fuzzify(rank_by_value(values, rank_by), params,
                 FeatureSpace::kActivation);
}

Fingerprint instance_fingerprint(std::span<const double> values,
                                 const FingerprintLibrary& library) {
  if (library.feature_space() != FeatureSpace::kActivation) {
    fail(ErrorKind::kDomain, "activation instance against a token library");
  }
  if (values.size() != library.dimension()) {
    fail(ErrorKind::kDimension,
         "instance has " + std::to_string(values.size()) +
             " values, library dimension is " +
             std::to_string(library.dimension()));
  }
  return instance_fingerprint(values, library.params(), library.rank_by());
}

std::vector<ElementId> token_ids(std::span<const std::string> ranked,
                                 const Vocabulary& vocabulary) {
  std::vector<ElementId> ids;
  ids.reserve(ranked.size());
  auto next = static_cast<std::uint32_t>(vocabulary.size());
  for (const auto& tok : ranked) {
    auto known = vocabulary.find(tok);
    ids.push_back(known ? *known : ElementId{next++});
  }
  return ids;
}

Fingerprint instance_fingerprint(std::span<const std::string> tokens,
                                 const FingerprintLibrary& library) {
  if (library.feature_space() != FeatureSpace::kToken) {
    fail(ErrorKind::kDomain, "token instance against an activation library");
  }
  const LabeledTokenBag bag{"", "", {tokens.begin(), tokens.end()}};
  const auto ranked = rank_tokens(std::span(&bag, 1));
  const auto ids = token_ids(ranked, library.vocabulary());
  return fuzzify_available(ids, library.params(), FeatureSpace::kToken);
}

}  // namespace ffp
