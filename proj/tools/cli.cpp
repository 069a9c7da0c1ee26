#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ffp/classify.hpp"
#include "ffp/error.hpp"
#include "ffp/eval.hpp"
#include "ffp/io.hpp"
#include "ffp/library.hpp"
#include "ffp/parallel.hpp"
#include "ffp/report.hpp"
#include "ffp/synthetic.hpp"

namespace ffp::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string mode = "activation";
  std::size_t k = 0;
  double a = 0.8;
  double n = 1.0;
  std::vector<std::string> train;
  std::string valid;
  std::vector<std::string> test;
  std::string instances;
  std::string library;
  std::string out;
  std::string dailydialog;
  std::string split = "test";
  std::string format = "text";
  std::string ranking = "signed";
  std::vector<std::size_t> k_grid = default_k_grid();
  bool explain = false;
  std::uint64_t seed = 42;
  std::size_t threads = default_threads();
  SyntheticSpec synth;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  if (!fs::is_regular_file(path)) {
    fail(ErrorKind::kIngestion, std::string(flag) + " '" + path + "' does not exist");
  }
}

void require_writable(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    fail(ErrorKind::kIngestion, std::string(flag) + " directory '" +
                                    parent.string() + "' does not exist");
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorKind::kIngestion, "cannot write '" + path + "'");
  file << content;
}

FeatureSpace mode_of(const Options& o) {
  if (o.mode == "activation") return FeatureSpace::kActivation;
  if (o.mode == "token") return FeatureSpace::kToken;
  throw UsageError("--mode must be 'activation' or 'token'");
}

Split split_of(const std::string& text) {
  auto split = parse_split(text);
  if (!split) throw UsageError("unknown split '" + text + "'");
  return *split;
}

ActivationDataset activation_split(const std::string& path, Split split) {
  auto set = io::load_embeddings(path);
  auto data = set.split(split);
  if (data.empty()) {
    fail(ErrorKind::kEmptyDataset,
         path + ": no '" + std::string(to_string(split)) + "' records");
  }
  return data;
}

TokenDataset token_split(const std::string& path, Split split) {
  auto corpus = io::load_token_corpus(path);
  auto data = corpus.split(split);
  if (data.empty()) {
    fail(ErrorKind::kEmptyDataset,
         path + ": no '" + std::string(to_string(split)) + "' records");
  }
  return data;
}

FingerprintLibrary build_from(const Options& o, const std::string& train_path) {
  const FuzzifyParams params{o.k, o.a};
  params.validate();
  const BuildOptions build{parse_rank_by(o.ranking), o.threads};
  if (mode_of(o) == FeatureSpace::kActivation) {
    return build_library(activation_split(train_path, Split::kTrain), params,
                         build);
  }
  return build_library(token_split(train_path, Split::kTrain), params, build);
}

int cmd_build(const Options& o, std::ostream& out) {
  if (o.train.size() != 1) throw UsageError("build takes exactly one --train");
  require_file(o.train.front(), "--train");
  require_writable(o.out, "--out");
  if (o.k == 0) throw UsageError("--k is required");
  const auto library = build_from(o, o.train.front());
  io::save_library(library, o.out);
  out << "wrote " << library.size() << " fingerprints (k=" << library.params().k
      << ") to " << o.out << "\n";
  return kExitOk;
}

struct Emitter {
  const Options& o;
  const FingerprintLibrary& library;
  std::ostream& sink;

  void emit(const std::string& id, const Fingerprint& fp,
            const std::optional<std::string>& gold) {
    const SimilarityParams params{o.n};
    const auto result = classify(fp, library, params);
    std::optional<Explanation> explanation;
    if (o.explain) explanation = explain(fp, library, params);
    const Explanation* ex = explanation ? &*explanation : nullptr;
    if (o.format == "json") {
      sink << report::classification_json(id, result, library, ex, gold) << "\n";
    } else {
      sink << report::classification_text(id, result, library, ex, gold);
    }
  }
};

int cmd_classify(const Options& o, std::ostream& out) {
  require_file(o.library, "--library");
  if (o.test.empty() == o.instances.empty()) {
    throw UsageError("classify takes exactly one of --test or --instances");
  }
  if (!o.test.empty()) {
    if (o.test.size() != 1) throw UsageError("classify takes one --test");
    require_file(o.test.front(), "--test");
  } else {
    require_file(o.instances, "--instances");
  }
  if (!o.out.empty()) require_writable(o.out, "--out");
  SimilarityParams{o.n}.validate();

  const auto library = io::load_library(o.library);
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!file) fail(ErrorKind::kIngestion, "cannot write '" + o.out + "'");
  }
  Emitter emitter{o, library, o.out.empty() ? out : file};

  if (!o.instances.empty()) {
    for (const auto& inst : io::load_instance_fingerprints(o.instances, library)) {
      emitter.emit(inst.id, inst.fingerprint, inst.label);
    }
    return kExitOk;
  }
  // Every record of the file is classified, whatever its split.
  if (library.feature_space() == FeatureSpace::kActivation) {
    const auto set = io::load_embeddings(o.test.front());
    for (const auto& [split, data] : set.splits) {
      for (const auto& v : data.instances) {
        try {
          emitter.emit(v.id, instance_fingerprint(v.values, library), v.label);
        } catch (const Error& e) {
          throw Error(e.kind(), "instance '" + v.id + "': " + e.what());
        }
      }
    }
  } else {
    const auto corpus = io::load_token_corpus(o.test.front());
    for (const auto& [split, data] : corpus.splits) {
      for (const auto& bag : data.instances) {
        emitter.emit(bag.id, instance_fingerprint(bag.tokens, library), bag.label);
      }
    }
  }
  return kExitOk;
}

EvalReport evaluate_file(const Options& o, const FingerprintLibrary& library,
                         const std::string& test_path) {
  const SimilarityParams params{o.n};
  const EvalOptions eval{o.threads};
  const Split split = split_of(o.split);
  if (library.feature_space() == FeatureSpace::kActivation) {
    return evaluate(library, activation_split(test_path, split), params, eval);
  }
  return evaluate(library, token_split(test_path, split), params, eval);
}

void write_reports(const Options& o, const std::string& json,
                   const std::string& text, std::ostream& out) {
  if (!o.out.empty()) {
    write_file(o.out + ".json", json);
    write_file(o.out + ".txt", text);
  }
  out << text;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  if (o.test.empty()) throw UsageError("--test is required");
  for (const auto& t : o.test) require_file(t, "--test");
  if (!o.out.empty()) require_writable(o.out, "--out");
  split_of(o.split);
  SimilarityParams{o.n}.validate();

  std::vector<EvalReport> reports;
  if (!o.library.empty()) {
    if (!o.train.empty()) throw UsageError("give either --library or --train, not both");
    require_file(o.library, "--library");
    const auto library = io::load_library(o.library);
    for (const auto& t : o.test) reports.push_back(evaluate_file(o, library, t));
  } else {
    if (o.train.empty()) throw UsageError("--library or --train is required");
    if (o.k == 0) throw UsageError("--k is required when building from --train");
    if (o.train.size() != o.test.size()) {
      throw UsageError("--train and --test must be given the same number of times");
    }
    for (const auto& t : o.train) require_file(t, "--train");
    FuzzifyParams{o.k, o.a}.validate();
    for (std::size_t i = 0; i < o.train.size(); ++i) {
      reports.push_back(evaluate_file(o, build_from(o, o.train[i]), o.test[i]));
    }
  }
  if (reports.size() == 1) {
    write_reports(o, report::eval_json(reports.front()),
                  report::eval_text(reports.front()), out);
    return kExitOk;
  }
  std::string text;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    text += "run " + std::to_string(i + 1) + "\n" + report::eval_text(reports[i]) + "\n";
  }
  const auto agg = average_reports(reports);
  text += report::aggregate_text(agg);
  write_reports(o, report::aggregate_json(agg), text, out);
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.train.size() != 1) throw UsageError("sweep takes exactly one --train");
  require_file(o.train.front(), "--train");
  std::string eval_path;
  Split eval_split = Split::kValidation;
  if (!o.valid.empty()) {
    eval_path = o.valid;
    require_file(eval_path, "--valid");
  } else if (o.test.size() == 1) {
    eval_path = o.test.front();
    eval_split = Split::kTest;
    require_file(eval_path, "--test");
  } else {
    throw UsageError("sweep needs --valid or a single --test");
  }
  if (!o.out.empty()) require_writable(o.out, "--out");
  SimilarityParams params{o.n};
  params.validate();
  const EvalOptions eval{o.threads};

  KSweepReport report;
  if (mode_of(o) == FeatureSpace::kActivation) {
    const BuildOptions build{parse_rank_by(o.ranking), o.threads};
    report = sweep_k(activation_split(o.train.front(), Split::kTrain),
                     activation_split(eval_path, eval_split), o.k_grid, o.a,
                     params, build, eval);
  } else {
    report = sweep_k(token_split(o.train.front(), Split::kTrain),
                     token_split(eval_path, eval_split), o.k_grid, o.a, params,
                     eval);
  }
  write_reports(o, report::sweep_json(report), report::sweep_text(report), out);
  return kExitOk;
}

int cmd_convert(const Options& o, std::ostream& out) {
  if (o.dailydialog.empty()) throw UsageError("--dailydialog is required");
  require_writable(o.out, "--out");
  const auto corpus = io::load_dailydialog(o.dailydialog);
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorKind::kIngestion, "cannot write '" + o.out + "'");
  io::write_utterances(file, corpus);
  out << "wrote " << corpus.utterance_count() << " utterances from "
      << corpus.dialogue_count() << " dialogues to " << o.out << "\n";
  return kExitOk;
}

int cmd_inspect(const Options& o, std::ostream& out) {
  require_file(o.library, "--library");
  const auto library = io::load_library(o.library);
  out << (o.format == "json" ? io::library_to_json(library)
                             : report::library_text(library));
  return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
  require_writable(o.out, "--out");
  SyntheticSpec spec = o.synth;
  spec.seed = o.seed;
  const auto data = make_separable(spec);
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorKind::kIngestion, "cannot write '" + o.out + "'");
  io::write_embedding_header(
      file, {spec.dimension, synthetic_labels(spec.classes),
             "{\"generator\":\"separable\",\"seed\":" + std::to_string(spec.seed) + "}"});
  for (const auto& v : data.train.instances) {
    io::write_embedding_record(file, v.id, Split::kTrain, v.label, v.values);
  }
  for (const auto& v : data.test.instances) {
    io::write_embedding_record(file, v.id, Split::kTest, v.label, v.values);
  }
  out << "wrote " << data.train.size() << " train and " << data.test.size()
      << " test records to " << o.out << "\n";
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::kParameter ? kExitParameter : kExitData;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Fuzzy fingerprint classification toolkit", "ffp"};
  app.set_config("--config", "", "TOML/INI file of flag values; flags win");
  app.require_subcommand(1);

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
  };
  auto add_mode = [&o](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Feature space: activation or token")
        ->check(CLI::IsMember({"activation", "token"}));
    sub->add_option("--ranking", o.ranking,
                    "Activation ranking: signed or magnitude")
        ->check(CLI::IsMember({"signed", "magnitude"}));
  };
  auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* build = app.add_subcommand("build", "Build a fingerprint library");
  add_mode(build);
  build->add_option("--train", o.train, "Training data file")->required();
  build->add_option("--k", o.k, "Fingerprint size K")->required();
  build->add_option("--a", o.a, "Membership slope a");
  build->add_option("--out", o.out, "Library output path")->required();
  add_common(build);

  auto* classify_cmd = app.add_subcommand("classify", "Classify instances");
  classify_cmd->add_option("--library", o.library, "Library file")->required();
  classify_cmd->add_option("--test", o.test, "Dataset file to classify");
  classify_cmd->add_option("--instances", o.instances,
                           "Line-delimited instance fingerprints");
  classify_cmd->add_option("--n", o.n, "Similarity normalization N");
  classify_cmd->add_flag("--explain", o.explain, "Attach per-element evidence");
  classify_cmd->add_option("--out", o.out, "Output path (default stdout)");
  add_format(classify_cmd);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate on a test split");
  add_mode(evaluate_cmd);
  evaluate_cmd->add_option("--library", o.library, "Library file");
  evaluate_cmd->add_option("--train", o.train, "Training data (repeatable)");
  evaluate_cmd->add_option("--test", o.test, "Test data (repeatable)");
  evaluate_cmd->add_option("--split", o.split, "Split of --test to score");
  evaluate_cmd->add_option("--k", o.k, "Fingerprint size K");
  evaluate_cmd->add_option("--a", o.a, "Membership slope a");
  evaluate_cmd->add_option("--n", o.n, "Similarity normalization N");
  evaluate_cmd->add_option("--out", o.out, "Report path prefix (.json/.txt)");
  add_common(evaluate_cmd);

  auto* sweep = app.add_subcommand("sweep", "Macro-F1 as a function of K");
  add_mode(sweep);
  sweep->add_option("--train", o.train, "Training data file")->required();
  sweep->add_option("--valid", o.valid, "Validation data file");
  sweep->add_option("--test", o.test, "Test data file");
  sweep->add_option("--k-grid", o.k_grid, "K values")->delimiter(',');
  sweep->add_option("--a", o.a, "Membership slope a");
  sweep->add_option("--n", o.n, "Similarity normalization N");
  sweep->add_option("--out", o.out, "Report path prefix (.json/.txt)");
  add_common(sweep);

  auto* convert = app.add_subcommand("convert", "DailyDialog to utterance lines");
  convert->add_option("--dailydialog", o.dailydialog, "Dataset directory")
      ->required();
  convert->add_option("--out", o.out, "Output path")->required();

  auto* inspect = app.add_subcommand("inspect", "Print a library");
  inspect->add_option("--library", o.library, "Library file")->required();
  add_format(inspect);

  auto* synth = app.add_subcommand("synth", "Generate separable synthetic data");
  synth->add_option("--seed", o.seed, "Random seed");
  synth->add_option("--out", o.out, "Output path")->required();
  synth->add_option("--classes", o.synth.classes, "Number of classes");
  synth->add_option("--dim", o.synth.dimension, "Vector dimension");
  synth->add_option("--block", o.synth.block, "Active coordinates per class");
  synth->add_option("--signal", o.synth.signal, "Mean on the active block");
  synth->add_option("--noise", o.synth.noise_std, "Noise standard deviation");
  synth->add_option("--train-per-class", o.synth.train_per_class);
  synth->add_option("--test-per-class", o.synth.test_per_class);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (convert->parsed()) return cmd_convert(o, out);
    if (inspect->parsed()) return cmd_inspect(o, out);
    if (synth->parsed()) return cmd_synth(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ffp::cli
