#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffp/fingerprint.hpp"

namespace ffp {

enum class Split { kTrain, kValidation, kTest };

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view text);

struct LabeledVector {
  std::string id;
  std::string label;
  std::vector<double> values;
};

struct LabeledTokenBag {
  std::string id;
  std::string label;
  std::vector<std::string> tokens;
};

struct ActivationDataset {
  std::size_t dimension = 0;
  std::vector<LabeledVector> instances;

  bool empty() const { return instances.empty(); }
  std::size_t size() const { return instances.size(); }
  // Checks length == dimension and finiteness of every instance.
  void validate() const;
};

struct TokenDataset {
  std::vector<LabeledTokenBag> instances;

  bool empty() const { return instances.empty(); }
  std::size_t size() const { return instances.size(); }
};

// Distinct labels in first-seen order is not stable across shuffles, so
// every label list in the toolkit is sorted.
std::vector<std::string> label_set(const ActivationDataset& data);
std::vector<std::string> label_set(const TokenDataset& data);

// Lowercases ASCII, splits on runs of ASCII non-alphanumerics and drops empty
// pieces. Bytes >= 0x80 count as word characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

/// Interns token strings to ElementIds for the token feature space.
class Vocabulary {
 public:
  ElementId intern(const std::string& token);
  std::optional<ElementId> find(const std::string& token) const;
  const std::string& token(ElementId id) const;
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  std::map<std::string, ElementId, std::less<>> ids_;
  std::vector<std::string> tokens_;
};

}  // namespace ffp
