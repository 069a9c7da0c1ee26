#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ffp/classify.hpp"
#include "ffp/dataset.hpp"
#include "ffp/library.hpp"

namespace ffp {

/// Rows are gold labels, columns are predictions, both in `labels` order.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> counts;

  explicit ConfusionMatrix(std::vector<std::string> label_list = {});

  std::size_t index_of(const std::string& label) const;
  void add(const std::string& gold, const std::string& predicted);
  std::size_t total() const;

  bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;

  bool operator==(const ClassScore&) const = default;
};

struct EvalReport {
  std::map<std::string, ClassScore> per_class;
  double macro_f1 = 0.0;
  ConfusionMatrix confusion;
  std::size_t k = 0;
  double a = 0.0;
  double n = 1.0;

  double f1(const std::string& label) const { return per_class.at(label).f1; }
  bool operator==(const EvalReport&) const = default;
};

struct KSweepPoint {
  std::size_t k = 0;
  double macro_f1 = 0.0;

  bool operator==(const KSweepPoint&) const = default;
};

struct KSweepReport {
  std::vector<KSweepPoint> points;  // k ascending
  std::size_t best_k = 0;
  std::vector<EvalReport> reports;  // parallel to points
};

// Mean of several runs (e.g. one per fine-tuning seed).
struct AggregateReport {
  std::size_t runs = 0;
  std::map<std::string, double> mean_f1;
  double mean_macro_f1 = 0.0;
};

// Per-class F1 with 0/0 -> 0, macro-F1 as the unweighted mean over
// `label_set` (classes absent from both sequences contribute 0).
EvalReport macro_f1(std::span<const std::string> gold,
                    std::span<const std::string> predicted,
                    std::span<const std::string> label_set);

struct EvalOptions {
  std::size_t threads = 1;
};

EvalReport evaluate(const FingerprintLibrary& library,
                    const ActivationDataset& test,
                    const SimilarityParams& params = {},
                    const EvalOptions& options = {});
EvalReport evaluate(const FingerprintLibrary& library, const TokenDataset& test,
                    const SimilarityParams& params = {},
                    const EvalOptions& options = {});

// Ranks each class and each evaluation instance once and truncates per K;
// every point is identical to build_library + evaluate at that K.
KSweepReport sweep_k(const ActivationDataset& train,
                     const ActivationDataset& eval_split,
                     std::span<const std::size_t> k_values, double a,
                     const SimilarityParams& params = {},
                     const BuildOptions& build = {},
                     const EvalOptions& options = {});
KSweepReport sweep_k(const TokenDataset& train, const TokenDataset& eval_split,
                     std::span<const std::size_t> k_values, double a,
                     const SimilarityParams& params = {},
                     const EvalOptions& options = {});

// Best macro-F1; ties go to the smallest K.
std::size_t select_k(const KSweepReport& report);

AggregateReport average_reports(std::span<const EvalReport> reports);

// Presentation order for per-class tables: the emotion order
// anger, disgust, fear, happiness, sadness, surprise, neutral when the labels
// are exactly that set, otherwise ascending.
std::vector<std::string> display_order(std::vector<std::string> labels);

// The K grid used by default for sweeps.
std::vector<std::size_t> default_k_grid();

}  // namespace ffp
