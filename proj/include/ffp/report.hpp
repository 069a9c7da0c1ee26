#pragma once

#include <optional>
#include <string>

#include "ffp/classify.hpp"
#include "ffp/eval.hpp"
#include "ffp/library.hpp"

// Plain-text and JSON renderings of classification, evaluation and sweep
// results. Text tables put per-class columns in display_order() and print
// F1 as a percentage with two decimals.
namespace ffp::report {

// Element name for display: the coordinate index, or the token string for
// token libraries ("<unk:ID>" when the id is outside the vocabulary).
std::string element_name(ElementId id, const FingerprintLibrary& library);

// "{(217,1), (644,0.9), ...}"
std::string fingerprint_text(const Fingerprint& fp,
                             const FingerprintLibrary& library);

std::string library_text(const FingerprintLibrary& library);

std::string classification_json(const std::string& id,
                                 const ClassificationResult& result,
                                 const FingerprintLibrary& library,
                                 const Explanation* explanation = nullptr,
                                 const std::optional<std::string>& gold = {});
std::string classification_text(const std::string& id,
                                const ClassificationResult& result,
                                const FingerprintLibrary& library,
                                const Explanation* explanation = nullptr,
                                const std::optional<std::string>& gold = {});

std::string eval_json(const EvalReport& report);
std::string eval_text(const EvalReport& report);

std::string sweep_json(const KSweepReport& report);
std::string sweep_text(const KSweepReport& report);

std::string aggregate_json(const AggregateReport& report);
std::string aggregate_text(const AggregateReport& report);

}  // namespace ffp::report
