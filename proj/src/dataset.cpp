#include "ffp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ffp/error.hpp"

namespace ffp {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
  }
  return "train";
}

std::optional<Split> parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "validation" || text == "valid" || text == "dev") {
    return Split::kValidation;
  }
  if (text == "test") return Split::kTest;
  return std::nullopt;
}

void ActivationDataset::validate() const {
  for (const auto& inst : instances) {
    if (inst.values.size() != dimension) {
      fail(ErrorKind::kDimension,
           "instance '" + inst.id + "' has " +
               std::to_string(inst.values.size()) + " values, expected " +
               std::to_string(dimension));
    }
    for (double v : inst.values) {
      if (!std::isfinite(v)) {
        fail(ErrorKind::kDomain,
             "instance '" + inst.id + "' contains a non-finite value");
      }
    }
  }
}

namespace {

template <typename Instances>
std::vector<std::string> collect_labels(const Instances& instances) {
  std::set<std::string> labels;
  for (const auto& inst : instances) labels.insert(inst.label);
  return {labels.begin(), labels.end()};
}

}  // namespace

std::vector<std::string> label_set(const ActivationDataset& data) {
  return collect_labels(data.instances);
}

std::vector<std::string> label_set(const TokenDataset& data) {
  return collect_labels(data.instances);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    const bool word = c >= 0x80 || (c >= '0' && c <= '9') ||
                      (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (word) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

ElementId Vocabulary::intern(const std::string& token) {
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  const ElementId id{static_cast<std::uint32_t>(tokens_.size())};
  ids_.emplace(token, id);
  tokens_.push_back(token);
  return id;
}

std::optional<ElementId> Vocabulary::find(const std::string& token) const {
  auto it = ids_.find(token);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::token(ElementId id) const {
  if (id.value >= tokens_.size()) {
    fail(ErrorKind::kDomain,
         "token id " + std::to_string(id.value) + " not in vocabulary");
  }
  return tokens_[id.value];
}

}  // namespace ffp
