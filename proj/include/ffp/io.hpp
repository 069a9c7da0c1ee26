#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffp/dataset.hpp"
#include "ffp/library.hpp"

namespace ffp::io {

inline constexpr int kLibraryFormatVersion = 1;
inline constexpr int kEmbeddingFormatVersion = 1;

/// Contents of a line-delimited embedding file.
///
/// Each line is a JSON object {"id", "split", "label", "vector"}. An optional
/// first line {"format": "ffp-embeddings", "version", "dimension", "labels",
/// "meta"} declares the dimension and label set up front; when labels are
/// declared, records with other labels are rejected.
struct EmbeddingSet {
  std::size_t dimension = 0;
  std::vector<std::string> declared_labels;
  std::string meta;  // serialized JSON, opaque to the toolkit
  std::map<Split, ActivationDataset> splits;

  // Empty dataset of the right dimension when the split is absent.
  ActivationDataset split(Split which) const;
  std::size_t size() const;
};

EmbeddingSet load_embeddings(const std::filesystem::path& path);
EmbeddingSet read_embeddings(std::istream& in);

struct EmbeddingHeader {
  std::size_t dimension = 0;
  std::vector<std::string> labels;
  std::string meta = "{}";
};

void write_embedding_header(std::ostream& out, const EmbeddingHeader& header);
void write_embedding_record(std::ostream& out, const std::string& id,
                            Split split, const std::string& label,
                            std::span<const double> values);

/// Token corpus: the same line shape with "text" (tokenized on load) or a
/// pre-tokenized "tokens" array instead of "vector".
struct TokenCorpus {
  std::map<Split, TokenDataset> splits;

  TokenDataset split(Split which) const;
  std::size_t size() const;
};

TokenCorpus load_token_corpus(const std::filesystem::path& path);
TokenCorpus read_token_corpus(std::istream& in);

struct Utterance {
  std::string dialogue_id;
  std::size_t turn_index = 0;
  std::string text;
  std::string label;
};

using Dialogue = std::vector<Utterance>;

struct DailyDialogCorpus {
  std::map<Split, std::vector<Dialogue>> splits;

  std::size_t dialogue_count() const;
  std::size_t utterance_count() const;
  std::map<std::string, std::size_t> label_counts() const;
};

// 0 = no emotion (neutral), 1 anger, 2 disgust, 3 fear, 4 happiness,
// 5 sadness, 6 surprise.
const std::string& dailydialog_label(int code);
const std::vector<std::string>& dailydialog_labels();

// Accepts <dir>/<split>/dialogues_<split>.txt with
// dialogues_emotion_<split>.txt, the same files directly under <dir>, or the
// unsplit release (dialogues_text.txt, dialogues_emotion.txt) loaded as train.
DailyDialogCorpus load_dailydialog(const std::filesystem::path& dir);

// Parses one dialogue line and its label line.
Dialogue parse_dialogue(const std::string& dialogue_id,
                        const std::string& text_line,
                        const std::string& label_line);

// One JSON line per utterance: id, split, label, text, dialogue_id, turn.
// The output loads with load_token_corpus.
void write_utterances(std::ostream& out, const DailyDialogCorpus& corpus);

std::string library_to_json(const FingerprintLibrary& library);
FingerprintLibrary library_from_json(const std::string& text);
void save_library(const FingerprintLibrary& library,
                  const std::filesystem::path& path);
FingerprintLibrary load_library(const std::filesystem::path& path);

struct InstanceFingerprint {
  std::string id;
  std::optional<std::string> label;
  Fingerprint fingerprint;
};

// Line-delimited {"id", "elements", "memberships"[, "label"]} records, with
// elements resolved in the library's feature space (token strings are looked
// up in its vocabulary).
std::vector<InstanceFingerprint> load_instance_fingerprints(
    const std::filesystem::path& path, const FingerprintLibrary& library);
std::vector<InstanceFingerprint> read_instance_fingerprints(
    std::istream& in, const FingerprintLibrary& library);

}  // namespace ffp::io
