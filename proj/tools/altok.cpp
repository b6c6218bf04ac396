// Copyright 2026 The altok Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// altok command line: train, tokenize, detokenize, eval, align,
// export-probs, inspect.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "altok/altok.hpp"

namespace {

using altok::AnyModel;
using altok::PairedModel;
using altok::UnigramModel;
using Strings = std::vector<std::string>;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitOutput = 3;

struct UsageError : altok::Error {
  using altok::Error::Error;
};

struct OutputError : altok::Error {
  using altok::Error::Error;
};

// Collects output in memory and writes it on commit, so a failed command
// never leaves a half-written file behind. An empty path means stdout.
class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    std::ofstream probe(path_, std::ios::binary | std::ios::app);
    if (!probe) throw OutputError("cannot write '" + path_ + "'");
  }
  std::ostream& stream() { return buf_; }
  void commit() {
    if (path_.empty()) {
      std::cout << buf_.str() << std::flush;
      return;
    }
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    out << buf_.str();
    out.flush();
    if (!out) throw OutputError("cannot write '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

std::string join(const Strings& tokens, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

Strings read_input(const std::string& path) {
  if (!path.empty() && path != "-") return altok::read_lines(path);
  Strings lines;
  std::string line;
  size_t n = 0;
  while (std::getline(std::cin, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!altok::is_valid_utf8(line)) throw altok::DecodeError("stdin:" + std::to_string(n) + ": invalid UTF-8");
    lines.push_back(std::move(line));
  }
  return lines;
}

struct CorpusArgs {
  std::string source;
  std::string target;
  std::string tsv;

  void add(CLI::App* app) {
    auto* src = app->add_option("--source", source, "Source-side text, one sentence per line");
    auto* tgt = app->add_option("--target", target, "Target-side text, parallel to --source");
    auto* t = app->add_option("--tsv", tsv, "Single file of source<TAB>target lines");
    t->excludes(src)->excludes(tgt);
  }

  altok::ParallelText read() const {
    if (!tsv.empty()) return altok::read_tsv(tsv);
    if (source.empty() || target.empty()) throw UsageError("give --source and --target, or --tsv");
    return altok::read_parallel(source, target);
  }
};

// Training options with flag > config file > default precedence.
struct TrainArgs {
  CLI::Option* vocab_size = nullptr;
  CLI::Option* max_piece_len = nullptr;
  CLI::Option* iterations = nullptr;
  CLI::Option* sub_iterations = nullptr;
  CLI::Option* shrink = nullptr;
  CLI::Option* variant = nullptr;
  CLI::Option* source_vocab = nullptr;
  CLI::Option* ibm_iterations = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* deterministic = nullptr;
  CLI::Option* normalize_posterior = nullptr;
  CLI::Option* substring_denominator = nullptr;

  size_t vocab_size_v = 0, max_piece_len_v = 0, iterations_v = 0, sub_iterations_v = 0;
  size_t source_vocab_v = 0, ibm_iterations_v = 0;
  double shrink_v = 0.0;
  std::string variant_v;
  unsigned threads_v = 1;
  std::string config_path;

  void add(CLI::App* app) {
    vocab_size = app->add_option("--vocab-size", vocab_size_v, "Target vocabulary size (default 8000)");
    max_piece_len = app->add_option("--max-piece-len", max_piece_len_v, "Longest piece in characters (default 16)");
    iterations = app->add_option("--iterations", iterations_v, "Minimum number of count steps (default 8)");
    sub_iterations = app->add_option("--sub-iterations", sub_iterations_v, "Count steps between prunes (default 2)");
    shrink = app->add_option("--shrink-factor", shrink_v, "Share of pieces kept by a prune (default 0.75)");
    variant = app->add_option("--variant", variant_v, "expected or hard_em")
                  ->check(CLI::IsMember({"expected", "hard_em"}));
    source_vocab = app->add_option("--source-vocab-size", source_vocab_v,
                                   "Vocabulary of the source model trained on the fly (default: --vocab-size)");
    ibm_iterations = app->add_option("--ibm-iterations", ibm_iterations_v, "IBM Model 1 iterations (default 5)");
    threads = app->add_option("--threads", threads_v, "Worker threads, 0 for all cores (default 1)");
    deterministic = app->add_flag("--deterministic", "Thread-count independent reductions");
    normalize_posterior = app->add_flag("--normalize-posterior", "Divide expected counts by the sentence total");
    substring_denominator = app->add_flag("--substring-denominator", "Restrict p(t|S) to substrings of the target");
    app->add_option("--config", config_path, "Flat JSON file with any of the settings above");
  }

  // Resolved settings.
  altok::TrainConfig train;
  std::optional<size_t> source_vocab_size;
  size_t ibm_iters = 5;
  unsigned n_threads = 1;

  void resolve() {
    train = altok::TrainConfig{};
    train.deterministic_reduction = false;
    if (!config_path.empty()) {
      altok::Json j;
      try {
        j = altok::Json::parse(altok::read_file(config_path));
      } catch (const altok::Json::exception& e) {
        throw altok::FormatError(config_path + ": " + e.what());
      }
      if (!j.is_object()) throw altok::FormatError(config_path + ": expected a JSON object");
      try {
        if (j.contains("threads")) n_threads = j["threads"].get<unsigned>();
        if (j.contains("source_vocab_size")) source_vocab_size = j["source_vocab_size"].get<size_t>();
        if (j.contains("ibm_iterations")) ibm_iters = j["ibm_iterations"].get<size_t>();
      } catch (const altok::Json::exception& e) {
        throw altok::FormatError(config_path + ": " + e.what());
      }
      for (const char* k : {"threads", "source_vocab_size", "ibm_iterations", "renyi_alpha"}) j.erase(k);
      train = altok::config_from_json(j, train);
    }
    if (vocab_size->count()) train.vocab_size = vocab_size_v;
    if (max_piece_len->count()) train.max_piece_len = max_piece_len_v;
    if (iterations->count()) train.n_iterations = iterations_v;
    if (sub_iterations->count()) train.n_subiterations = sub_iterations_v;
    if (shrink->count()) train.shrink_factor = shrink_v;
    if (variant->count()) train.variant = altok::parse_variant(variant_v);
    if (deterministic->count()) train.deterministic_reduction = true;
    if (normalize_posterior->count()) train.normalize_posterior = true;
    if (substring_denominator->count()) train.substring_denominator = true;
    if (source_vocab->count()) source_vocab_size = source_vocab_v;
    if (ibm_iterations->count()) ibm_iters = ibm_iterations_v;
    if (threads->count()) n_threads = threads_v;
    train.threads = altok::resolve_threads(n_threads);
    train.validate();
  }
};

UnigramModel load_unigram(const std::string& path) {
  AnyModel m = altok::load_model(path);
  if (auto* u = std::get_if<UnigramModel>(&m)) return std::move(*u);
  throw UsageError("'" + path + "' is not a unigram model");
}

void log_progress(const altok::TrainProgress& p) {
  static constexpr const char* kPhase[] = {"init", "count", "prune", "final"};
  std::cerr << "[paired] " << kPhase[static_cast<int>(p.phase)] << " iter=" << p.iteration
            << " vocab=" << p.vocab_size << " loglik=" << format_double("%.6f", p.log_likelihood) << "\n";
}

void log_unigram(const char* tag, const altok::UnigramEmStats& s) {
  std::cerr << "[" << tag << "] round=" << s.round << " step=" << s.sub_iteration << " vocab=" << s.vocab_size
            << " loglik=" << format_double("%.6f", s.log_likelihood) << "\n";
}

// ---- train ----

struct TrainCmd {
  CorpusArgs corpus;
  TrainArgs args;
  std::string type = "paired";
  std::string input;
  std::string source_model;
  std::string alignments;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("train", "Train a paired or a plain unigram tokenizer");
    corpus.add(app);
    args.add(app);
    app->add_option("--type", type, "paired (default) or unigram")->check(CLI::IsMember({"paired", "unigram"}));
    app->add_option("--input", input, "Monolingual text for --type unigram (default: --target)");
    app->add_option("--source-model", source_model, "Pretrained source-side unigram model");
    app->add_option("--alignments", alignments, "Pharaoh word links, one line per sentence pair");
    app->add_option("-o,--output", output, "Model file to write")->required();
    app->callback([this] { run(); });
  }

  void run() {
    args.resolve();
    Output out(output);
    if (type == "unigram") {
      std::string path = !input.empty() ? input : corpus.target;
      if (path.empty() && !corpus.tsv.empty()) {
        const auto text = corpus.read();
        train_unigram_on(text.target, out);
        return;
      }
      if (path.empty()) throw UsageError("--type unigram needs --input or --target");
      train_unigram_on(altok::read_lines(path), out);
      return;
    }
    const altok::ParallelText text = corpus.read();
    altok::PipelineOptions options;
    options.train = args.train;
    options.source_vocab_size = args.source_vocab_size.value_or(args.train.vocab_size);
    options.ibm_iterations = args.ibm_iters;
    options.on_source_step = [](const altok::UnigramEmStats& s) { log_unigram("source", s); };
    if (!source_model.empty()) options.source_model = load_unigram(source_model);
    if (!alignments.empty()) options.links = altok::read_pharaoh_file(alignments);
    const PairedModel model =
        altok::train_pipeline(text, options, [](const altok::TrainProgress& p, const altok::CoocTable&) {
          log_progress(p);
        });
    out.stream() << altok::serialize(model);
    out.commit();
  }

  void train_unigram_on(const Strings& lines, Output& out) {
    Strings normalized;
    normalized.reserve(lines.size());
    for (const auto& l : lines) normalized.push_back(altok::normalize(l));
    altok::UnigramTrainerConfig uc;
    uc.vocab_size = args.train.vocab_size;
    uc.max_piece_len = args.train.max_piece_len;
    uc.shrink_factor = args.train.shrink_factor;
    uc.num_sub_iterations = args.train.n_subiterations;
    uc.threads = args.train.threads;
    uc.deterministic = args.train.deterministic_reduction;
    uc.on_em_step = [](const altok::UnigramEmStats& s) { log_unigram("unigram", s); };
    out.stream() << altok::serialize(altok::train_unigram(normalized, uc));
    out.commit();
  }
};

// ---- tokenization shared by tokenize, eval, align ----

enum class Mode { kPaired, kMarginal, kUnigram };

Mode parse_mode(const std::string& s) {
  if (s == "paired") return Mode::kPaired;
  if (s == "marginal") return Mode::kMarginal;
  return Mode::kUnigram;
}

Mode default_mode(const AnyModel& m, bool have_source) {
  if (std::holds_alternative<UnigramModel>(m)) return Mode::kUnigram;
  return have_source ? Mode::kPaired : Mode::kMarginal;
}

void check_mode(const AnyModel& m, Mode mode, bool have_source) {
  const bool paired = std::holds_alternative<PairedModel>(m);
  if (mode == Mode::kUnigram && paired) throw UsageError("mode 'unigram' needs a unigram model");
  if (mode != Mode::kUnigram && !paired) throw UsageError("modes 'paired' and 'marginal' need a paired model");
  if (mode == Mode::kPaired && !have_source) throw UsageError("mode 'paired' needs --source");
}

// Tokenizes already normalized text.
Strings tokenize_normalized(const AnyModel& m, Mode mode, const std::string& target, const std::string* source) {
  switch (mode) {
    case Mode::kUnigram:
      return std::get<UnigramModel>(m).tokenize(target);
    case Mode::kMarginal:
      return altok::tokenize_marginal(std::get<PairedModel>(m), target);
    case Mode::kPaired: {
      const auto enc = altok::encode_paired(std::get<PairedModel>(m), target, *source);
      return altok::token_strings(enc.tokens);
    }
  }
  return {};
}

Strings model_vocab(const AnyModel& m) {
  if (const auto* u = std::get_if<UnigramModel>(&m)) {
    Strings v;
    for (const auto& p : u->pieces()) v.push_back(p.piece);
    return v;
  }
  return std::get<PairedModel>(m).table.target_vocab().strings();
}

Strings normalize_all(const Strings& lines) {
  Strings out;
  out.reserve(lines.size());
  for (const auto& l : lines) out.push_back(altok::normalize(l));
  return out;
}

// ---- tokenize ----

struct TokenizeCmd {
  std::string model_path;
  std::string mode;
  std::string input;
  std::string source;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("tokenize", "Tokenize text, one output line per input line");
    app->add_option("-m,--model", model_path, "Model file")->required();
    app->add_option("--mode", mode, "paired, marginal or unigram (default from model type)")
        ->check(CLI::IsMember({"paired", "marginal", "unigram"}));
    app->add_option("-i,--input", input, "Target-side text (default stdin)");
    app->add_option("--source", source, "Source-side text for paired mode");
    app->add_option("-o,--output", output, "Output file (default stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    const AnyModel m = altok::load_model(model_path);
    const bool have_source = !source.empty();
    const Mode md = mode.empty() ? default_mode(m, have_source) : parse_mode(mode);
    check_mode(m, md, have_source);
    Output out(output);
    const Strings target = normalize_all(read_input(input));
    Strings src;
    if (md == Mode::kPaired) {
      src = normalize_all(altok::read_lines(source));
      if (src.size() != target.size()) throw altok::LineCountMismatch(src.size(), target.size());
    }
    size_t fallbacks = 0;
    for (size_t i = 0; i < target.size(); ++i) {
      if (md == Mode::kPaired) {
        const auto enc = altok::encode_paired(std::get<PairedModel>(m), target[i], src[i]);
        fallbacks += enc.fell_back_to_marginal;
        out.stream() << join(altok::token_strings(enc.tokens), " ") << "\n";
      } else {
        out.stream() << join(tokenize_normalized(m, md, target[i], nullptr), " ") << "\n";
      }
    }
    if (fallbacks) std::cerr << "warning: " << fallbacks << " lines had an empty source; used marginal decoding\n";
    out.commit();
  }
};

// ---- detokenize ----

struct DetokenizeCmd {
  std::string input;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("detokenize", "Join space-separated tokens back into text");
    app->add_option("-i,--input", input, "Tokenized text (default stdin)");
    app->add_option("-o,--output", output, "Output file (default stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    Output out(output);
    for (const auto& line : read_input(input)) {
      Strings tokens;
      std::istringstream ss(line);
      for (std::string t; ss >> t;) tokens.push_back(std::move(t));
      out.stream() << altok::detokenize(tokens) << "\n";
    }
    out.commit();
  }
};

// ---- eval ----

struct EvalCmd {
  std::string model_path;
  std::string baseline_path;
  std::string source_model_path;
  std::string mode;
  std::string alignments;
  std::string output;
  double renyi_alpha = 2.5;
  CorpusArgs corpus;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("eval", "Intrinsic metrics of a model against a baseline");
    app->add_option("-m,--model", model_path, "Model under evaluation")->required();
    app->add_option("-b,--baseline", baseline_path, "Reference model")->required();
    app->add_option("--source-model", source_model_path,
                    "Unigram model for the source side (default: the paired model's own)");
    app->add_option("--mode", mode, "How to run --model: paired, marginal or unigram")
        ->check(CLI::IsMember({"paired", "marginal", "unigram"}));
    app->add_option("--alignments", alignments,
                    "Pharaoh links between source tokens and the model's target tokens");
    app->add_option("--renyi-alpha", renyi_alpha, "Order of the Rényi entropy (default 2.5)");
    app->add_option("-o,--output", output, "Report file (default stdout)");
    corpus.add(app);
    app->callback([this] { run(); });
  }

  void run() {
    const AnyModel model = altok::load_model(model_path);
    const AnyModel baseline = altok::load_model(baseline_path);
    Output out(output);
    const altok::ParallelText text = corpus.read();
    const Strings src = normalize_all(text.source);
    const Strings tgt = normalize_all(text.target);

    std::optional<UnigramModel> source_model;
    if (!source_model_path.empty()) {
      source_model = load_unigram(source_model_path);
    } else if (const auto* p = std::get_if<PairedModel>(&model)) {
      source_model = p->source_model;
    } else {
      source_model = std::get<UnigramModel>(model);
    }
    const Mode md = mode.empty() ? default_mode(model, true) : parse_mode(mode);
    check_mode(model, md, true);
    const Mode base_md = default_mode(baseline, false);

    altok::TokenizedCorpus ours, reference, source_tokens, words;
    for (size_t i = 0; i < tgt.size(); ++i) {
      ours.push_back(tokenize_normalized(model, md, tgt[i], &src[i]));
      reference.push_back(tokenize_normalized(baseline, base_md, tgt[i], nullptr));
      source_tokens.push_back(source_model->tokenize(src[i]));
      words.push_back(altok::pretokenize(tgt[i]));
    }
    const Strings our_vocab = model_vocab(model);
    const Strings ref_vocab = model_vocab(baseline);
    altok::MetricsReport report = altok::aux_metrics(ours, our_vocab, reference, ref_vocab, renyi_alpha);
    const auto tgt_counts = altok::token_counts(ours);
    const auto src_counts = altok::token_counts(source_tokens);
    report.parity = altok::Metric{altok::parity(tgt_counts, src_counts), tgt.size()};
    report.fertility = altok::Metric{altok::fertility(ours, words), altok::total_tokens(words)};
    if (!alignments.empty()) {
      const auto links = altok::read_pharaoh_file(alignments);
      if (links.size() != tgt.size()) throw altok::LineCountMismatch(tgt.size(), links.size());
      for (size_t i = 0; i < links.size(); ++i) links[i].validate(src_counts[i], tgt_counts[i]);
      const auto rates = altok::alignment_metrics(links, src_counts);
      report.one_to_one = altok::Metric{rates.one_to_one, rates.source_tokens};
      report.unaligned = altok::Metric{rates.unaligned, rates.source_tokens};
    }
    out.stream() << report.to_json();
    out.commit();
  }
};

// ---- align ----

struct AlignCmd {
  std::string model_path;
  bool words = false;
  size_t ibm_iterations = 5;
  unsigned threads = 1;
  std::string output;
  CorpusArgs corpus;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("align", "Pharaoh links between source and target tokens");
    app->add_option("-m,--model", model_path, "Paired model; links its tokens");
    app->add_flag("--words", words, "Link words with IBM Model 1 instead (no model needed)");
    app->add_option("--ibm-iterations", ibm_iterations, "IBM Model 1 iterations for --words (default 5)");
    app->add_option("--threads", threads, "Worker threads for --words, 0 for all cores");
    app->add_option("-o,--output", output, "Output file (default stdout)");
    corpus.add(app);
    app->callback([this] { run(); });
  }

  void run() {
    if (words == !model_path.empty()) throw UsageError("give exactly one of --model and --words");
    Output out(output);
    const altok::NormalizedCorpus text = altok::normalize_corpus(corpus.read());
    if (words) {
      altok::Ibm1Config ic;
      ic.iterations = ibm_iterations;
      ic.threads = altok::resolve_threads(threads);
      for (const auto& links : altok::align_words(text, ic)) out.stream() << altok::format_pharaoh(links) << "\n";
      out.commit();
      return;
    }
    const AnyModel m = altok::load_model(model_path);
    const auto* model = std::get_if<PairedModel>(&m);
    if (!model) throw UsageError("align needs a paired model");
    for (size_t i = 0; i < text.size(); ++i) {
      const auto enc = altok::encode_paired(*model, text.target[i], text.source[i]);
      const auto alignment = altok::extract_alignment(*model, altok::token_strings(enc.tokens), enc.source_bag);
      std::vector<altok::Link> links;
      for (size_t j = 0; j < alignment.size(); ++j) {
        if (alignment[j]) links.push_back({static_cast<uint32_t>(*alignment[j]), static_cast<uint32_t>(j)});
      }
      out.stream() << altok::format_pharaoh(altok::AlignmentLinks(std::move(links))) << "\n";
    }
    out.commit();
  }
};

// ---- export-probs ----

struct ExportCmd {
  std::string model_path;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("export-probs", "Rows target<TAB>source<TAB>p(t|s) for every nonzero cell");
    app->add_option("-m,--model", model_path, "Paired model")->required();
    app->add_option("-o,--output", output, "Output file (default stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    const AnyModel m = altok::load_model(model_path);
    const auto* model = std::get_if<PairedModel>(&m);
    if (!model) throw UsageError("export-probs needs a paired model");
    Output out(output);
    const altok::CoocTable& t = model->table;
    std::vector<std::string> rows;
    for (const auto& e : t.entries()) {
      rows.push_back(t.target(e.target) + "\t" + t.source(e.source) + "\t" +
                     format_double("%.9g", altok::align_prob(t, e.target, e.source)));
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& r : rows) out.stream() << r << "\n";
    out.commit();
  }
};

// ---- inspect ----

struct InspectCmd {
  std::string model_path;
  bool pieces = false;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("inspect", "Summary of a model file");
    app->add_option("-m,--model", model_path, "Model file")->required();
    app->add_flag("--pieces", pieces, "List every piece with its probability");
    app->callback([this] { run(); });
  }

  void run() {
    const AnyModel m = altok::load_model(model_path);
    Output out("");
    auto& os = out.stream();
    if (const auto* u = std::get_if<UnigramModel>(&m)) {
      os << "type\tunigram\n";
      os << "pieces\t" << u->size() << "\n";
      os << "max_piece_len\t" << u->max_piece_len() << "\n";
      if (pieces) {
        for (const auto& p : u->pieces()) os << p.piece << "\t" << format_double("%.6f", p.log_prob) << "\n";
      }
    } else {
      const auto& p = std::get<PairedModel>(m);
      const altok::CoocTable& t = p.table;
      size_t chars = 0;
      for (const auto& s : t.target_vocab().strings()) chars += altok::is_single_char(s);
      os << "type\tpaired-unigram\n";
      os << "variant\t" << altok::to_string(p.config.variant) << "\n";
      os << "config\t" << altok::to_json(p.config).dump() << "\n";
      os << "target_vocab\t" << t.target_size() << "\n";
      os << "single_chars\t" << chars << "\n";
      os << "source_vocab\t" << t.source_size() << "\n";
      os << "nonzero\t" << t.nonzero() << "\n";
      os << "total\t" << format_double("%.6f", t.total()) << "\n";
      if (pieces) {
        for (size_t k = 0; k < t.target_size(); ++k) {
          const auto id = static_cast<altok::TokenId>(k);
          os << t.target(id) << "\t" << format_double("%.6f", t.row_sum(id)) << "\t"
             << format_double("%.9g", altok::marginal_prob(t, id)) << "\n";
        }
      }
    }
    out.commit();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"altok: source-conditioned subword tokenizers"};
  app.require_subcommand(1);
  TrainCmd train;
  TokenizeCmd tokenize;
  DetokenizeCmd detokenize;
  EvalCmd eval;
  AlignCmd align;
  ExportCmd export_probs;
  InspectCmd inspect;
  train.add(app);
  tokenize.add(app);
  detokenize.add(app);
  eval.add(app);
  align.add(app);
  export_probs.add(app);
  inspect.add(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const altok::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const altok::LineCountMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OutputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOutput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
