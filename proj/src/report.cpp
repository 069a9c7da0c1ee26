#include "ffp/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace ffp::report {

using nlohmann::ordered_json;

namespace {

std::string number(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::string percent(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << v * 100.0;
  return out.str();
}

ordered_json element_json(ElementId id, const FingerprintLibrary& library) {
  if (library.feature_space() == FeatureSpace::kToken) {
    return element_name(id, library);
  }
  return id.value;
}

ordered_json fingerprint_json(const Fingerprint& fp,
                              const FingerprintLibrary& library) {
  ordered_json elements = ordered_json::array();
  ordered_json memberships = ordered_json::array();
  for (const auto& e : fp.entries()) {
    elements.push_back(element_json(e.element, library));
    memberships.push_back(e.mu);
  }
  return {{"elements", elements}, {"memberships", memberships}};
}

ordered_json confusion_json(const ConfusionMatrix& m) {
  return {{"labels", m.labels}, {"counts", m.counts}};
}

ordered_json eval_object(const EvalReport& report) {
  ordered_json per_class = ordered_json::object();
  for (const auto& label : display_order(report.confusion.labels)) {
    const auto& s = report.per_class.at(label);
    per_class[label] = {{"precision", s.precision},
                        {"recall", s.recall},
                        {"f1", s.f1},
                        {"support", s.support}};
  }
  return {{"k", report.k},
          {"a", report.a},
          {"n", report.n},
          {"instances", report.confusion.total()},
          {"macro_f1", report.macro_f1},
          {"per_class", per_class},
          {"confusion", confusion_json(report.confusion)}};
}

}  // namespace

std::string element_name(ElementId id, const FingerprintLibrary& library) {
  if (library.feature_space() == FeatureSpace::kToken) {
    if (id.value < library.vocabulary().size()) {
      return library.vocabulary().token(id);
    }
    return "<unk:" + std::to_string(id.value) + ">";
  }
  return std::to_string(id.value);
}

std::string fingerprint_text(const Fingerprint& fp,
                             const FingerprintLibrary& library) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : fp.entries()) {
    if (!first) out += ", ";
    first = false;
    out += "(" + element_name(e.element, library) + "," + number(e.mu) + ")";
  }
  return out + "}";
}

std::string library_text(const FingerprintLibrary& library) {
  std::ostringstream out;
  out << "feature space: " << to_string(library.feature_space())
      << "  dimension: " << library.dimension() << "  k: " << library.params().k
      << "  a: " << number(library.params().a)
      << "  ranking: " << to_string(library.rank_by())
      << "  classes: " << library.size() << "\n";
  for (const auto& label : display_order(library.labels())) {
    out << "FFP_" << label << " = "
        << fingerprint_text(library.at(label), library) << "\n";
  }
  return out.str();
}

std::string classification_json(const std::string& id,
                                 const ClassificationResult& result,
                                 const FingerprintLibrary& library,
                                 const Explanation* explanation,
                                 const std::optional<std::string>& gold) {
  ordered_json j;
  j["id"] = id;
  if (gold) j["gold"] = *gold;
  j["predicted"] = result.predicted;
  j["no_evidence"] = result.no_evidence;
  ordered_json scores = ordered_json::object();
  for (const auto& label : display_order(library.labels())) {
    scores[label] = result.scores.at(label);
  }
  j["scores"] = scores;
  j["fingerprint"] = fingerprint_json(result.instance_fp, library);
  if (explanation) {
    ordered_json per_class = ordered_json::object();
    for (const auto& ev : explanation->per_class) {
      ordered_json rows = ordered_json::array();
      for (const auto& r : ev.rows) {
        rows.push_back({{"element", element_json(r.element, library)},
                        {"mu_instance", r.mu_instance},
                        {"mu_class", r.mu_class},
                        {"contribution", r.contribution}});
      }
      per_class[ev.label] = {{"total", ev.total}, {"rows", rows}};
    }
    j["explanation"] = {{"n", explanation->n}, {"per_class", per_class}};
  }
  return j.dump();
}

std::string classification_text(const std::string& id,
                                 const ClassificationResult& result,
                                 const FingerprintLibrary& library,
                                 const Explanation* explanation,
                                 const std::optional<std::string>& gold) {
  std::ostringstream out;
  out << id << ": predicted " << result.predicted;
  if (gold) out << " (gold " << *gold << ")";
  if (result.no_evidence) out << " [no evidence]";
  out << "\n  FFP_sample = " << fingerprint_text(result.instance_fp, library)
      << "\n  similarity:";
  for (const auto& label : display_order(library.labels())) {
    out << " " << label << "=" << number(result.scores.at(label));
  }
  out << "\n";
  if (explanation) {
    for (const auto& ev : explanation->per_class) {
      if (ev.rows.empty()) continue;
      out << "  " << ev.label << " (total " << number(ev.total) << "):";
      for (const auto& r : ev.rows) {
        out << " " << element_name(r.element, library) << "["
            << number(r.mu_instance) << "^" << number(r.mu_class) << "="
            << number(r.contribution) << "]";
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string eval_json(const EvalReport& report) {
  return eval_object(report).dump(2) + "\n";
}

std::string eval_text(const EvalReport& report) {
  const auto labels = display_order(report.confusion.labels);
  std::ostringstream out;
  out << "K=" << report.k << "  a=" << number(report.a)
      << "  N=" << number(report.n)
      << "  instances=" << report.confusion.total() << "\n";
  out << std::left << std::setw(10) << "";
  for (const auto& l : labels) out << std::setw(12) << l;
  out << "\n" << std::setw(10) << "F1";
  for (const auto& l : labels) out << std::setw(12) << percent(report.f1(l));
  out << "\nmacro-F1: " << percent(report.macro_f1) << "\n\nconfusion (rows gold, columns predicted)\n";
  out << std::setw(12) << "";
  for (const auto& l : labels) out << std::setw(12) << l;
  out << "\n";
  for (const auto& g : labels) {
    out << std::setw(12) << g;
    const auto gi = report.confusion.index_of(g);
    for (const auto& p : labels) {
      out << std::setw(12) << report.confusion.counts[gi][report.confusion.index_of(p)];
    }
    out << "\n";
  }
  return out.str();
}

std::string sweep_json(const KSweepReport& report) {
  ordered_json points = ordered_json::array();
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    ordered_json p = {{"k", report.points[i].k},
                      {"macro_f1", report.points[i].macro_f1}};
    if (i < report.reports.size()) {
      ordered_json per_class = ordered_json::object();
      const auto& r = report.reports[i];
      for (const auto& label : display_order(r.confusion.labels)) {
        per_class[label] = r.f1(label);
      }
      p["per_class_f1"] = per_class;
    }
    points.push_back(p);
  }
  ordered_json j = {{"best_k", report.best_k}, {"points", points}};
  return j.dump(2) + "\n";
}

std::string sweep_text(const KSweepReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "K";
  for (const auto& p : report.points) out << std::setw(8) << p.k;
  out << "\n" << std::setw(6) << "F1";
  for (const auto& p : report.points) out << std::setw(8) << percent(p.macro_f1);
  out << "\nselected K: " << report.best_k << "\n";
  return out.str();
}

std::string aggregate_json(const AggregateReport& report) {
  ordered_json per_class = ordered_json::object();
  std::vector<std::string> labels;
  for (const auto& [label, f1] : report.mean_f1) labels.push_back(label);
  for (const auto& label : display_order(labels)) {
    per_class[label] = report.mean_f1.at(label);
  }
  ordered_json j = {{"runs", report.runs},
                    {"mean_macro_f1", report.mean_macro_f1},
                    {"mean_per_class_f1", per_class}};
  return j.dump(2) + "\n";
}

std::string aggregate_text(const AggregateReport& report) {
  std::vector<std::string> labels;
  for (const auto& [label, f1] : report.mean_f1) labels.push_back(label);
  labels = display_order(labels);
  std::ostringstream out;
  out << "mean over " << report.runs << " runs\n" << std::left << std::setw(10) << "";
  for (const auto& l : labels) out << std::setw(12) << l;
  out << "\n" << std::setw(10) << "F1";
  for (const auto& l : labels) out << std::setw(12) << percent(report.mean_f1.at(l));
  out << "\nmacro-F1: " << percent(report.mean_macro_f1) << "\n";
  return out.str();
}

}  // namespace ffp::report
