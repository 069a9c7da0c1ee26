#include "ffp/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ffp/error.hpp"

namespace ffp::io {

using nlohmann::json;

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIngestion, "cannot open '" + path.string() + "'");
  return in;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] void line_error(ErrorKind kind, std::size_t line_no,
                             const std::string& message) {
  fail(kind, "line " + std::to_string(line_no) + ": " + message);
}

json parse_line(const std::string& line, std::size_t line_no) {
  try {
    json j = json::parse(line);
    if (!j.is_object()) line_error(ErrorKind::kParse, line_no, "expected a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    line_error(ErrorKind::kParse, line_no, e.what());
  }
}

std::string require_string(const json& j, const char* field,
                           std::size_t line_no) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_string()) {
    line_error(ErrorKind::kParse, line_no,
               std::string("missing string field '") + field + "'");
  }
  return it->get<std::string>();
}

Split require_split(const json& j, std::size_t line_no) {
  const auto text = require_string(j, "split", line_no);
  auto split = parse_split(text);
  if (!split) line_error(ErrorKind::kParse, line_no, "unknown split '" + text + "'");
  return *split;
}

}  // namespace

ActivationDataset EmbeddingSet::split(Split which) const {
  auto it = splits.find(which);
  if (it != splits.end()) return it->second;
  return ActivationDataset{dimension, {}};
}

std::size_t EmbeddingSet::size() const {
  std::size_t n = 0;
  for (const auto& [split, data] : splits) n += data.size();
  return n;
}

EmbeddingSet read_embeddings(std::istream& in) {
  EmbeddingSet set;
  std::set<std::string> declared;
  std::set<std::string> seen_ids;
  bool dimension_fixed = false;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    json j = parse_line(line, line_no);
    if (first && j.contains("format")) {
      first = false;
      if (j["format"] != "ffp-embeddings") {
        line_error(ErrorKind::kParse, line_no, "not an ffp-embeddings header");
      }
      if (j.value("version", 0) != kEmbeddingFormatVersion) {
        fail(ErrorKind::kUnsupportedVersion,
             "embedding format version " + j.value("version", json()).dump() +
                 " is not supported");
      }
      if (j.contains("dimension")) {
        if (!j["dimension"].is_number_unsigned() || j["dimension"] == 0) {
          line_error(ErrorKind::kParse, line_no, "invalid dimension");
        }
        set.dimension = j["dimension"].get<std::size_t>();
        dimension_fixed = true;
      }
      if (j.contains("labels")) {
        for (const auto& l : j["labels"]) {
          if (!l.is_string()) line_error(ErrorKind::kParse, line_no, "labels must be strings");
          declared.insert(l.get<std::string>());
          set.declared_labels.push_back(l.get<std::string>());
        }
      }
      if (j.contains("meta")) set.meta = j["meta"].dump();
      continue;
    }
    first = false;

    LabeledVector record;
    record.id = require_string(j, "id", line_no);
    const Split split = require_split(j, line_no);
    record.label = require_string(j, "label", line_no);
    if (record.label.empty()) line_error(ErrorKind::kParse, line_no, "empty label");
    if (!declared.empty() && !declared.count(record.label)) {
      line_error(ErrorKind::kIngestion, line_no,
                 "record '" + record.id + "' has undeclared label '" +
                     record.label + "'");
    }
    auto vec = j.find("vector");
    if (vec == j.end() || !vec->is_array()) {
      line_error(ErrorKind::kParse, line_no, "missing array field 'vector'");
    }
    record.values.reserve(vec->size());
    for (const auto& v : *vec) {
      if (!v.is_number()) {
        line_error(ErrorKind::kParse, line_no,
                   "record '" + record.id + "' has a non-numeric value");
      }
      record.values.push_back(v.get<double>());
    }
    if (!dimension_fixed) {
      if (record.values.empty()) {
        line_error(ErrorKind::kDimension, line_no,
                   "record '" + record.id + "' has an empty vector");
      }
      set.dimension = record.values.size();
      dimension_fixed = true;
    }
    if (record.values.size() != set.dimension) {
      line_error(ErrorKind::kDimension, line_no,
                 "record '" + record.id + "' has " +
                     std::to_string(record.values.size()) +
                     " values, expected " + std::to_string(set.dimension));
    }
    if (!seen_ids.insert(record.id).second) {
      line_error(ErrorKind::kIngestion, line_no,
                 "duplicate record id '" + record.id + "'");
    }
    auto& dataset = set.splits[split];
    dataset.dimension = set.dimension;
    dataset.instances.push_back(std::move(record));
  }
  if (set.size() == 0) fail(ErrorKind::kEmptyDataset, "embedding file has no records");
  return set;
}

EmbeddingSet load_embeddings(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_embeddings(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_embedding_header(std::ostream& out, const EmbeddingHeader& header) {
  json j = {{"format", "ffp-embeddings"},
            {"version", kEmbeddingFormatVersion},
            {"dimension", header.dimension},
            {"labels", header.labels},
            {"meta", json::parse(header.meta)}};
  out << j.dump() << '\n';
}

void write_embedding_record(std::ostream& out, const std::string& id,
                            Split split, const std::string& label,
                            std::span<const double> values) {
  json j = {{"id", id},
            {"split", std::string(to_string(split))},
            {"label", label},
            {"vector", std::vector<double>(values.begin(), values.end())}};
  out << j.dump() << '\n';
}

TokenDataset TokenCorpus::split(Split which) const {
  auto it = splits.find(which);
  return it != splits.end() ? it->second : TokenDataset{};
}

std::size_t TokenCorpus::size() const {
  std::size_t n = 0;
  for (const auto& [split, data] : splits) n += data.size();
  return n;
}

TokenCorpus read_token_corpus(std::istream& in) {
  TokenCorpus corpus;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    json j = parse_line(line, line_no);
    LabeledTokenBag bag;
    bag.id = require_string(j, "id", line_no);
    const Split split = require_split(j, line_no);
    bag.label = require_string(j, "label", line_no);
    if (bag.label.empty()) line_error(ErrorKind::kParse, line_no, "empty label");
    if (auto toks = j.find("tokens"); toks != j.end()) {
      if (!toks->is_array()) line_error(ErrorKind::kParse, line_no, "'tokens' must be an array");
      for (const auto& t : *toks) {
        if (!t.is_string()) line_error(ErrorKind::kParse, line_no, "tokens must be strings");
        if (!t.get<std::string>().empty()) bag.tokens.push_back(t.get<std::string>());
      }
    } else {
      bag.tokens = tokenize(require_string(j, "text", line_no));
    }
    if (bag.tokens.empty()) {
      line_error(ErrorKind::kIngestion, line_no,
                 "record '" + bag.id + "' has no tokens");
    }
    if (!seen_ids.insert(bag.id).second) {
      line_error(ErrorKind::kIngestion, line_no,
                 "duplicate record id '" + bag.id + "'");
    }
    corpus.splits[split].instances.push_back(std::move(bag));
  }
  if (corpus.size() == 0) fail(ErrorKind::kEmptyDataset, "token corpus has no records");
  return corpus;
}

TokenCorpus load_token_corpus(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_token_corpus(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

// DailyDialog ---------------------------------------------------------------

const std::vector<std::string>& dailydialog_labels() {
  static const std::vector<std::string> kLabels = {
      "neutral", "anger",     "disgust", "fear",
      "happiness", "sadness", "surprise"};
  return kLabels;
}

const std::string& dailydialog_label(int code) {
  const auto& labels = dailydialog_labels();
  if (code < 0 || code >= static_cast<int>(labels.size())) {
    fail(ErrorKind::kIngestion, "unknown emotion code " + std::to_string(code));
  }
  return labels[static_cast<std::size_t>(code)];
}

std::size_t DailyDialogCorpus::dialogue_count() const {
  std::size_t n = 0;
  for (const auto& [split, dialogues] : splits) n += dialogues.size();
  return n;
}

std::size_t DailyDialogCorpus::utterance_count() const {
  std::size_t n = 0;
  for (const auto& [split, dialogues] : splits) {
    for (const auto& d : dialogues) n += d.size();
  }
  return n;
}

std::map<std::string, std::size_t> DailyDialogCorpus::label_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const auto& label : dailydialog_labels()) counts[label] = 0;
  for (const auto& [split, dialogues] : splits) {
    for (const auto& d : dialogues) {
      for (const auto& u : d) ++counts[u.label];
    }
  }
  return counts;
}

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_utterances(const std::string& line) {
  static constexpr std::string_view kSeparator = "__eou__";
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(kSeparator, pos);
    if (next == std::string::npos) {
      auto tail = trim(std::string_view(line).substr(pos));
      if (!tail.empty()) out.push_back(std::move(tail));
      break;
    }
    out.push_back(trim(std::string_view(line).substr(pos, next - pos)));
    pos = next + kSeparator.size();
  }
  return out;
}

}  // namespace

Dialogue parse_dialogue(const std::string& dialogue_id,
                        const std::string& text_line,
                        const std::string& label_line) {
  const auto texts = split_utterances(text_line);
  std::vector<int> codes;
  std::istringstream labels(label_line);
  std::string field;
  while (labels >> field) {
    std::size_t used = 0;
    int code = -1;
    try {
      code = std::stoi(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size()) {
      fail(ErrorKind::kIngestion, "dialogue " + dialogue_id +
                                      ": malformed label '" + field + "'");
    }
    codes.push_back(code);
  }
  if (texts.size() != codes.size()) {
    fail(ErrorKind::kIngestion,
         "dialogue " + dialogue_id + ": " + std::to_string(texts.size()) +
             " utterances but " + std::to_string(codes.size()) + " labels");
  }
  if (texts.empty()) {
    fail(ErrorKind::kIngestion, "dialogue " + dialogue_id + " is empty");
  }
  Dialogue dialogue;
  for (std::size_t t = 0; t < texts.size(); ++t) {
    dialogue.push_back({dialogue_id, t, texts[t], dailydialog_label(codes[t])});
  }
  return dialogue;
}

namespace {

std::vector<Dialogue> load_dialogue_files(const std::filesystem::path& text_path,
                                          const std::filesystem::path& label_path,
                                          const std::string& prefix) {
  auto texts = open_input(text_path);
  auto labels = open_input(label_path);
  std::vector<Dialogue> dialogues;
  std::string text_line, label_line;
  std::size_t line_no = 0;
  while (true) {
    const bool more_text = static_cast<bool>(std::getline(texts, text_line));
    const bool more_labels = static_cast<bool>(std::getline(labels, label_line));
    if (!more_text && !more_labels) break;
    ++line_no;
    if (more_text != more_labels) {
      fail(ErrorKind::kIngestion,
           text_path.string() + ": dialogue and label files differ in length at line " +
               std::to_string(line_no));
    }
    if (blank(text_line) && blank(label_line)) continue;
    try {
      dialogues.push_back(parse_dialogue(
          prefix + "-" + std::to_string(dialogues.size()), text_line, label_line));
    } catch (const Error& e) {
      fail(e.kind(), text_path.string() + " line " + std::to_string(line_no) +
                         ": " + e.what());
    }
  }
  return dialogues;
}

}  // namespace

DailyDialogCorpus load_dailydialog(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    fail(ErrorKind::kIngestion, "'" + dir.string() + "' is not a directory");
  }
  DailyDialogCorpus corpus;
  for (Split split : {Split::kTrain, Split::kValidation, Split::kTest}) {
    const std::string name(to_string(split));
    for (const fs::path& base : {dir / name, dir}) {
      const auto text = base / ("dialogues_" + name + ".txt");
      const auto labels = base / ("dialogues_emotion_" + name + ".txt");
      if (fs::exists(text) && fs::exists(labels)) {
        corpus.splits[split] = load_dialogue_files(text, labels, name);
        break;
      }
    }
  }
  if (corpus.splits.empty()) {
    const auto text = dir / "dialogues_text.txt";
    const auto labels = dir / "dialogues_emotion.txt";
    if (fs::exists(text) && fs::exists(labels)) {
      corpus.splits[Split::kTrain] = load_dialogue_files(text, labels, "all");
    }
  }
  if (corpus.splits.empty()) {
    fail(ErrorKind::kIngestion,
         "no DailyDialog split files found under '" + dir.string() + "'");
  }
  return corpus;
}

void write_utterances(std::ostream& out, const DailyDialogCorpus& corpus) {
  for (const auto& [split, dialogues] : corpus.splits) {
    for (const auto& dialogue : dialogues) {
      for (const auto& u : dialogue) {
        json j = {{"id", u.dialogue_id + "-" + std::to_string(u.turn_index)},
                  {"split", std::string(to_string(split))},
                  {"label", u.label},
                  {"text", u.text},
                  {"dialogue_id", u.dialogue_id},
                  {"turn", u.turn_index}};
        out << j.dump() << '\n';
      }
    }
  }
}

// Libraries -----------------------------------------------------------------

std::string library_to_json(const FingerprintLibrary& library) {
  const bool tokens = library.feature_space() == FeatureSpace::kToken;
  json classes = json::array();
  for (const auto& [label, fp] : library.classes()) {
    json elements = json::array();
    json memberships = json::array();
    for (const auto& e : fp.entries()) {
      if (tokens) {
        elements.push_back(library.vocabulary().token(e.element));
      } else {
        elements.push_back(e.element.value);
      }
      memberships.push_back(e.mu);
    }
    classes.push_back({{"label", label},
                       {"elements", std::move(elements)},
                       {"memberships", std::move(memberships)}});
  }
  json j = {{"format", "ffp-library"},
            {"version", kLibraryFormatVersion},
            {"feature_space", std::string(to_string(library.feature_space()))},
            {"dimension", library.dimension()},
            {"k", library.params().k},
            {"a", library.params().a},
            {"ranking", std::string(to_string(library.rank_by()))},
            {"classes", std::move(classes)}};
  if (tokens) j["vocabulary"] = library.vocabulary().tokens();
  return j.dump(2) + "\n";
}

FingerprintLibrary library_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kParse, std::string("library file: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", "") != "ffp-library") {
      fail(ErrorKind::kParse, "not an ffp-library file");
    }
    if (!j.contains("version") || j["version"] != kLibraryFormatVersion) {
      fail(ErrorKind::kUnsupportedVersion,
           "library format version " + j.value("version", json()).dump() +
               " is not supported (expected " +
               std::to_string(kLibraryFormatVersion) + ")");
    }
    const auto space = parse_feature_space(j.at("feature_space").get<std::string>());
    const FuzzifyParams params{j.at("k").get<std::size_t>(),
                               j.at("a").get<double>()};
    const auto rank_by = parse_rank_by(j.value("ranking", "signed"));
    const auto dimension = j.at("dimension").get<std::size_t>();

    Vocabulary vocabulary;
    if (space == FeatureSpace::kToken) {
      for (const auto& tok : j.at("vocabulary")) {
        vocabulary.intern(tok.get<std::string>());
      }
    }
    std::map<std::string, Fingerprint> classes;
    for (const auto& c : j.at("classes")) {
      const auto label = c.at("label").get<std::string>();
      const auto& elements = c.at("elements");
      const auto& memberships = c.at("memberships");
      if (elements.size() != memberships.size()) {
        fail(ErrorKind::kParse, "class '" + label +
                                    "': elements and memberships differ in length");
      }
      std::vector<FingerprintEntry> entries;
      for (std::size_t i = 0; i < elements.size(); ++i) {
        ElementId id;
        if (space == FeatureSpace::kToken) {
          auto found = vocabulary.find(elements[i].get<std::string>());
          if (!found) {
            fail(ErrorKind::kParse, "class '" + label + "': token '" +
                                        elements[i].get<std::string>() +
                                        "' missing from vocabulary");
          }
          id = *found;
        } else {
          id = ElementId{elements[i].get<std::uint32_t>()};
        }
        entries.push_back({id, memberships[i].get<double>()});
      }
      if (!classes.emplace(label, Fingerprint(space, params.k, std::move(entries)))
               .second) {
        fail(ErrorKind::kParse, "duplicate class '" + label + "'");
      }
    }
    return FingerprintLibrary(space, dimension, params, rank_by,
                              std::move(classes), std::move(vocabulary));
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, std::string("library file: ") + e.what());
  }
}

void save_library(const FingerprintLibrary& library,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIngestion, "cannot write '" + path.string() + "'");
  out << library_to_json(library);
  if (!out) fail(ErrorKind::kIngestion, "failed writing '" + path.string() + "'");
}

FingerprintLibrary load_library(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return library_from_json(buffer.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

// Instance fingerprints -----------------------------------------------------

std::vector<InstanceFingerprint> read_instance_fingerprints(
    std::istream& in, const FingerprintLibrary& library) {
  std::vector<InstanceFingerprint> out;
  std::string line;
  std::size_t line_no = 0;
  const bool tokens = library.feature_space() == FeatureSpace::kToken;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    json j = parse_line(line, line_no);
    InstanceFingerprint inst;
    inst.id = require_string(j, "id", line_no);
    if (j.contains("label") && j["label"].is_string()) {
      inst.label = j["label"].get<std::string>();
    }
    auto elements = j.find("elements");
    if (elements == j.end() || !elements->is_array()) {
      line_error(ErrorKind::kParse, line_no, "missing array field 'elements'");
    }
    try {
      std::vector<ElementId> ids;
      if (tokens) {
        std::vector<std::string> ranked;
        for (const auto& e : *elements) ranked.push_back(e.get<std::string>());
        ids = token_ids(ranked, library.vocabulary());
      } else {
        for (const auto& e : *elements) ids.push_back({e.get<std::uint32_t>()});
      }
      if (auto mus = j.find("memberships"); mus != j.end()) {
        if (!mus->is_array() || mus->size() != ids.size()) {
          fail(ErrorKind::kParse, "'memberships' must parallel 'elements'");
        }
        std::vector<FingerprintEntry> entries;
        for (std::size_t i = 0; i < ids.size(); ++i) {
          entries.push_back({ids[i], (*mus)[i].get<double>()});
        }
        inst.fingerprint = Fingerprint(library.feature_space(),
                                       std::max(library.params().k, ids.size()),
                                       std::move(entries));
      } else {
        inst.fingerprint = fuzzify_available(ids, library.params(),
                                             library.feature_space());
      }
    } catch (const json::exception& e) {
      line_error(ErrorKind::kParse, line_no, e.what());
    } catch (const Error& e) {
      line_error(e.kind(), line_no, e.what());
    }
    out.push_back(std::move(inst));
  }
  if (out.empty()) fail(ErrorKind::kEmptyDataset, "no instance fingerprints");
  return out;
}

std::vector<InstanceFingerprint> load_instance_fingerprints(
    const std::filesystem::path& path, const FingerprintLibrary& library) {
  auto in = open_input(path);
  try {
    return read_instance_fingerprints(in, library);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace ffp::io
