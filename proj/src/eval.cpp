#include "ffp/eval.hpp"

#include <algorithm>
#include <set>

#include "ffp/error.hpp"
#include "ffp/parallel.hpp"

namespace ffp {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> label_list)
    : labels(std::move(label_list)),
      counts(labels.size(), std::vector<std::size_t>(labels.size(), 0)) {}

std::size_t ConfusionMatrix::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    fail(ErrorKind::kEvaluation, "label '" + label + "' not in label set");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

void ConfusionMatrix::add(const std::string& gold,
                          const std::string& predicted) {
  ++counts[index_of(gold)][index_of(predicted)];
}

std::size_t ConfusionMatrix::total() const {
  std::size_t sum = 0;
  for (const auto& row : counts) {
    for (std::size_t c : row) sum += c;
  }
  return sum;
}

EvalReport macro_f1(std::span<const std::string> gold,
                    std::span<const std::string> predicted,
                    std::span<const std::string> label_set) {
  if (gold.size() != predicted.size()) {
    fail(ErrorKind::kEvaluation,
         "gold has " + std::to_string(gold.size()) + " labels, predictions " +
             std::to_string(predicted.size()));
  }
  std::set<std::string> distinct(label_set.begin(), label_set.end());
  if (distinct.size() != label_set.size()) {
    fail(ErrorKind::kEvaluation, "label set contains duplicates");
  }
  if (distinct.empty()) fail(ErrorKind::kEvaluation, "label set is empty");

  EvalReport report;
  report.confusion = ConfusionMatrix({label_set.begin(), label_set.end()});
  for (std::size_t i = 0; i < gold.size(); ++i) {
    report.confusion.add(gold[i], predicted[i]);
  }
  const auto& m = report.confusion.counts;
  const std::size_t n = m.size();
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t tp = m[c][c], row = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += m[c][j];
      col += m[j][c];
    }
    ClassScore s;
    s.support = row;
    s.precision = col ? static_cast<double>(tp) / static_cast<double>(col) : 0.0;
    s.recall = row ? static_cast<double>(tp) / static_cast<double>(row) : 0.0;
    s.f1 = (s.precision + s.recall) > 0.0
               ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    f1_sum += s.f1;
    report.per_class.emplace(report.confusion.labels[c], s);
  }
  report.macro_f1 = f1_sum / static_cast<double>(n);
  return report;
}

namespace {

[[noreturn]] void rethrow_for(const std::string& id, const Error& e) {
  throw Error(e.kind(), "instance '" + id + "': " + e.what());
}

template <typename Instances, typename Fingerprinter>
EvalReport evaluate_instances(const FingerprintLibrary& library,
                              const Instances& instances,
                              const SimilarityParams& params,
                              const EvalOptions& options,
                              Fingerprinter&& fingerprint) {
  params.validate();
  if (instances.empty()) fail(ErrorKind::kEvaluation, "test set is empty");
  const auto labels = library.labels();
  std::vector<std::string> predicted(instances.size());
  parallel_for(instances.size(), options.threads, [&](std::size_t i) {
    try {
      predicted[i] =
          classify(fingerprint(instances[i]), library, params).predicted;
    } catch (const Error& e) {
      rethrow_for(instances[i].id, e);
    }
  });
  std::vector<std::string> gold;
  gold.reserve(instances.size());
  for (const auto& inst : instances) {
    if (std::find(labels.begin(), labels.end(), inst.label) == labels.end()) {
      fail(ErrorKind::kEvaluation, "instance '" + inst.id + "': gold label '" +
                                       inst.label + "' not in library");
    }
    gold.push_back(inst.label);
  }
  auto report = macro_f1(gold, predicted, labels);
  report.k = library.params().k;
  report.a = library.params().a;
  report.n = params.n;
  return report;
}

}  // namespace

EvalReport evaluate(const FingerprintLibrary& library,
                    const ActivationDataset& test,
                    const SimilarityParams& params,
                    const EvalOptions& options) {
  return evaluate_instances(
      library, test.instances, params, options,
      [&library](const LabeledVector& v) {
        return instance_fingerprint(v.values, library);
      });
}

EvalReport evaluate(const FingerprintLibrary& library, const TokenDataset& test,
                    const SimilarityParams& params,
                    const EvalOptions& options) {
  return evaluate_instances(
      library, test.instances, params, options,
      [&library](const LabeledTokenBag& bag) {
        return instance_fingerprint(bag.tokens, library);
      });
}

namespace {

std::vector<std::size_t> sorted_grid(std::span<const std::size_t> k_values) {
  if (k_values.empty()) fail(ErrorKind::kParameter, "K grid is empty");
  std::vector<std::size_t> grid(k_values.begin(), k_values.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() == 0) fail(ErrorKind::kParameter, "K values must be >= 1");
  return grid;
}

template <typename Instances>
void check_disjoint(const Instances& train, const Instances& eval_split) {
  std::set<std::string> ids;
  for (const auto& inst : train) ids.insert(inst.id);
  for (const auto& inst : eval_split) {
    if (ids.count(inst.id)) {
      fail(ErrorKind::kEvaluation,
           "instance '" + inst.id + "' appears in both sweep splits");
    }
  }
}

// Classifies every pre-ranked instance at one K and scores the result.
EvalReport score_at_k(const FingerprintLibrary& library,
                      const std::vector<std::vector<ElementId>>& ranked,
                      const std::vector<std::string>& gold,
                      const std::vector<std::string>& ids,
                      const SimilarityParams& params,
                      const EvalOptions& options, bool allow_short) {
  const auto labels = library.labels();
  std::vector<std::string> predicted(ranked.size());
  parallel_for(ranked.size(), options.threads, [&](std::size_t i) {
    try {
      const auto fp =
          allow_short
              ? fuzzify_available(ranked[i], library.params(),
                                  library.feature_space())
              : fuzzify(ranked[i], library.params(), library.feature_space());
      predicted[i] = classify(fp, library, params).predicted;
    } catch (const Error& e) {
      rethrow_for(ids[i], e);
    }
  });
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (std::find(labels.begin(), labels.end(), gold[i]) == labels.end()) {
      fail(ErrorKind::kEvaluation, "instance '" + ids[i] + "': gold label '" +
                                       gold[i] + "' not in library");
    }
  }
  auto report = macro_f1(gold, predicted, labels);
  report.k = library.params().k;
  report.a = library.params().a;
  report.n = params.n;
  return report;
}

KSweepReport finish_sweep(KSweepReport report) {
  report.best_k = select_k(report);
  return report;
}

}  // namespace

KSweepReport sweep_k(const ActivationDataset& train,
                     const ActivationDataset& eval_split,
                     std::span<const std::size_t> k_values, double a,
                     const SimilarityParams& params, const BuildOptions& build,
                     const EvalOptions& options) {
  params.validate();
  const auto grid = sorted_grid(k_values);
  FuzzifyParams{grid.back(), a}.validate();
  if (train.empty()) fail(ErrorKind::kBuild, "cannot build from an empty dataset");
  if (eval_split.empty()) fail(ErrorKind::kEvaluation, "evaluation split is empty");
  if (grid.back() > train.dimension) {
    fail(ErrorKind::kParameter, "k=" + std::to_string(grid.back()) +
                                    " exceeds dimension " +
                                    std::to_string(train.dimension));
  }
  if (eval_split.dimension != train.dimension) {
    fail(ErrorKind::kDimension, "evaluation dimension " +
                                    std::to_string(eval_split.dimension) +
                                    " differs from training dimension " +
                                    std::to_string(train.dimension));
  }
  check_disjoint(train.instances, eval_split.instances);
  eval_split.validate();

  const auto accs = accumulate_by_class(train, options.threads);
  std::vector<std::vector<ElementId>> class_ranked;
  for (const auto& acc : accs) {
    class_ranked.push_back(rank_by_value(acc.sums, build.rank_by));
  }
  const auto& inst = eval_split.instances;
  std::vector<std::vector<ElementId>> inst_ranked(inst.size());
  std::vector<std::string> gold, ids;
  for (const auto& v : inst) {
    gold.push_back(v.label);
    ids.push_back(v.id);
  }
  parallel_for(inst.size(), options.threads, [&](std::size_t i) {
    inst_ranked[i] = rank_by_value(inst[i].values, build.rank_by);
  });

  KSweepReport report;
  for (std::size_t k : grid) {
    const FuzzifyParams fp_params{k, a};
    std::map<std::string, Fingerprint> classes;
    for (std::size_t c = 0; c < accs.size(); ++c) {
      classes.emplace(accs[c].label, fuzzify(class_ranked[c], fp_params,
                                             FeatureSpace::kActivation));
    }
    const FingerprintLibrary library(FeatureSpace::kActivation, train.dimension,
                                     fp_params, build.rank_by,
                                     std::move(classes));
    auto eval = score_at_k(library, inst_ranked, gold, ids, params, options,
                           /*allow_short=*/false);
    report.points.push_back({k, eval.macro_f1});
    report.reports.push_back(std::move(eval));
  }
  return finish_sweep(std::move(report));
}

KSweepReport sweep_k(const TokenDataset& train, const TokenDataset& eval_split,
                     std::span<const std::size_t> k_values, double a,
                     const SimilarityParams& params,
                     const EvalOptions& options) {
  params.validate();
  const auto grid = sorted_grid(k_values);
  FuzzifyParams{grid.back(), a}.validate();
  if (train.empty()) fail(ErrorKind::kBuild, "cannot build from an empty dataset");
  if (eval_split.empty()) fail(ErrorKind::kEvaluation, "evaluation split is empty");
  check_disjoint(train.instances, eval_split.instances);

  std::map<std::string, std::vector<LabeledTokenBag>> by_label;
  for (const auto& bag : train.instances) by_label[bag.label].push_back(bag);
  std::vector<std::pair<std::string, std::vector<std::string>>> class_ranked;
  for (const auto& [label, bags] : by_label) {
    class_ranked.emplace_back(label, rank_tokens(bags));
  }
  const auto& inst = eval_split.instances;
  std::vector<std::vector<std::string>> inst_tokens(inst.size());
  std::vector<std::string> gold, ids;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const LabeledTokenBag& bag = inst[i];
    inst_tokens[i] = rank_tokens(std::span(&bag, 1));
    gold.push_back(bag.label);
    ids.push_back(bag.id);
  }

  KSweepReport report;
  for (std::size_t k : grid) {
    const FuzzifyParams fp_params{k, a};
    Vocabulary vocabulary;
    std::map<std::string, Fingerprint> classes;
    for (const auto& [label, ranked] : class_ranked) {
      if (ranked.size() < k) {
        fail(ErrorKind::kBuild, "class '" + label + "' has " +
                                    std::to_string(ranked.size()) +
                                    " distinct tokens, fewer than k=" +
                                    std::to_string(k));
      }
      std::vector<ElementId> top;
      for (std::size_t i = 0; i < k; ++i) {
        top.push_back(vocabulary.intern(ranked[i]));
      }
      classes.emplace(label, fuzzify(top, fp_params, FeatureSpace::kToken));
    }
    const FingerprintLibrary library(FeatureSpace::kToken, 0, fp_params,
                                     RankBy::kSignedValue, std::move(classes),
                                     std::move(vocabulary));
    std::vector<std::vector<ElementId>> inst_ranked;
    inst_ranked.reserve(inst_tokens.size());
    for (const auto& toks : inst_tokens) {
      inst_ranked.push_back(token_ids(toks, library.vocabulary()));
    }
    auto eval = score_at_k(library, inst_ranked, gold, ids, params, options,
                           /*allow_short=*/true);
    report.points.push_back({k, eval.macro_f1});
    report.reports.push_back(std::move(eval));
  }
  return finish_sweep(std::move(report));
}

std::size_t select_k(const KSweepReport& report) {
  if (report.points.empty()) {
    fail(ErrorKind::kEvaluation, "cannot select K from an empty sweep");
  }
  const KSweepPoint* best = &report.points.front();
  for (const auto& p : report.points) {
    if (p.macro_f1 > best->macro_f1 ||
        (p.macro_f1 == best->macro_f1 && p.k < best->k)) {
      best = &p;
    }
  }
  return best->k;
}

AggregateReport average_reports(std::span<const EvalReport> reports) {
  if (reports.empty()) fail(ErrorKind::kEvaluation, "no reports to average");
  AggregateReport agg;
  agg.runs = reports.size();
  const auto& labels = reports.front().confusion.labels;
  for (const auto& r : reports) {
    if (r.confusion.labels != labels) {
      fail(ErrorKind::kEvaluation, "reports have different label sets");
    }
    for (const auto& [label, s] : r.per_class) agg.mean_f1[label] += s.f1;
    agg.mean_macro_f1 += r.macro_f1;
  }
  const auto runs = static_cast<double>(agg.runs);
  for (auto& [label, f1] : agg.mean_f1) f1 /= runs;
  agg.mean_macro_f1 /= runs;
  return agg;
}

std::vector<std::string> display_order(std::vector<std::string> labels) {
  static const std::vector<std::string> kEmotionOrder = {
      "anger", "disgust", "fear", "happiness", "sadness", "surprise", "neutral"};
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> emotion_sorted = kEmotionOrder;
  std::sort(emotion_sorted.begin(), emotion_sorted.end());
  if (sorted == emotion_sorted) return kEmotionOrder;
  return sorted;
}

std::vector<std::size_t> default_k_grid() {
  return {1, 5, 10, 25, 50, 100, 150, 200, 300, 400};
}

}  // namespace ffp
