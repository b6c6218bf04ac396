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

// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
// exit status if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "altok/altok.hpp"
#include "cipher.hpp"
#include "cli_runner.hpp"
#include "oracles.hpp"

namespace altok {
namespace {

using Strings = std::vector<std::string>;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

std::string concat(const Strings& tokens) {
  std::string out;
  for (const auto& t : tokens) out += t;
  return out;
}

Strings split_tokens(const std::string& line) {
  Strings out;
  size_t pos = 0;
  while (pos < line.size()) {
    const size_t sp = line.find(' ', pos);
    const size_t end = sp == std::string::npos ? line.size() : sp;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

std::set<std::string> single_chars(const CoocTable& t) {
  std::set<std::string> out;
  for (const auto& s : t.target_vocab().strings()) {
    if (is_single_char(s)) out.insert(s);
  }
  return out;
}

std::set<std::string> chars_of(const Strings& lines) {
  std::set<std::string> out;
  for (const auto& l : lines) {
    const Utf8Text t(l);
    for (size_t i = 0; i < t.size(); ++i) out.emplace(t.at(i));
  }
  return out;
}

// 1. Lattice against exhaustive enumeration.
Outcome viterbi_oracle() {
  const auto t0 = Clock::now();
  std::mt19937 rng(1001);
  std::uniform_real_distribution<double> u(0.001, 1.0);
  const Strings alphabet = {"a", "b", "c"};
  constexpr size_t kMaxLen = 4;
  size_t strings = 0;
  size_t bad = 0;
  for (int table = 0; table < 500; ++table) {
    std::map<std::string, double> probs;
    std::function<void(const std::string&)> fill = [&](const std::string& prefix) {
      for (const auto& c : alphabet) {
        const std::string piece = prefix + c;
        if (piece.size() == 1 || rng() % 3 != 0) probs[piece] = u(rng);
        if (piece.size() < kMaxLen) fill(piece);
      }
    };
    fill("");
    auto prob = [&](const std::string& p) {
      auto it = probs.find(p);
      return it == probs.end() ? 0.0 : it->second;
    };
    for (size_t n = 1; n <= 12; ++n) {
      std::string s;
      for (size_t k = 0; k < n; ++k) s += alphabet[rng() % 3];
      const Utf8Text text(s);
      auto scorer = [&](size_t b, size_t e) -> std::optional<Arc> {
        const double p = prob(std::string(text.span(b, e)));
        if (p <= 0.0) return std::nullopt;
        return Arc{0, std::log(p)};
      };
      Lattice lattice(text, scorer, kMaxLen);
      const Strings path = span_strings(text, lattice.viterbi());
      const auto brute = oracle::viterbi(text, prob, kMaxLen);
      const double total = oracle::total(text, 0, n, prob, kMaxLen);
      const Marginals m = lattice.forward_backward();
      ++strings;
      if (path != brute.tokens || !close_rel(m.alpha(n), total, 1e-9) ||
          !close_rel(std::exp(m.log_beta[0]), total, 1e-9)) {
        ++bad;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 60.0, std::to_string(strings) + " strings over 500 tables, " + std::to_string(bad) +
                                       " mismatches, " + fmt("%.1f", secs) + " s"};
}

// 2. Expected-count step against a literal evaluation of the contribution formula.
Outcome estep_oracle() {
  const auto t0 = Clock::now();
  std::mt19937 rng(2002);
  const Strings letters = {"a", "b", "c"};
  const Strings source_vocab = {"<null>", "x", "y", "z"};
  std::vector<WordPairExample> examples;
  for (int k = 0; k < 200; ++k) {
    std::string t;
    const size_t n = 1 + rng() % 8;
    for (size_t i = 0; i < n; ++i) t += letters[rng() % 3];
    std::vector<TokenId> bag;
    const size_t m = 1 + rng() % 3;
    for (size_t i = 0; i < m; ++i) bag.push_back(static_cast<TokenId>(rng() % 4));
    examples.push_back({bag, t});
  }
  TrainConfig config;
  config.max_piece_len = 4;
  const CoocTable init = init_table(examples, source_vocab, config.max_piece_len, config);
  // Check two consecutive steps so the second runs on non-integer counts.
  const CoocTable step1 = expected_count_step(init, examples, config);
  const CoocTable step2 = expected_count_step(step1, examples, config);
  size_t cells = 0;
  size_t bad = 0;
  for (const auto& [before, after] : {std::pair{&init, &step1}, std::pair{&step1, &step2}}) {
    std::map<std::pair<std::string, int>, double> expected;
    for (const auto& ex : examples) {
      const ConditionalScorer p(*before, ex.source);
      auto prob = [&](const std::string& piece) { return p(before->target_id(piece)); };
      const std::vector<int> bag(ex.source.begin(), ex.source.end());
      for (const auto& [k, c] : oracle::expected_counts(Utf8Text(ex.target), bag, prob, config.max_piece_len)) {
        expected[k] += c;
      }
    }
    for (const auto& [k, c] : expected) {
      ++cells;
      const TokenId t = after->target_id(k.first);
      const double got = t < 0 ? 0.0 : after->count(t, k.second);
      if (!close_rel(got, c, 1e-9)) ++bad;
    }
    if (after->nonzero() != expected.size()) ++bad;
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 60.0, std::to_string(cells) + " cells over two steps on 200 examples, " +
                                       std::to_string(bad) + " mismatches, " + fmt("%.1f", secs) + " s"};
}

// 3. Probability normalization on a trained table.
Outcome normalization(const PairedModel& model, const Strings& targets) {
  const CoocTable& t = model.table;
  const auto nt = static_cast<TokenId>(t.target_size());
  const auto ns = static_cast<TokenId>(t.source_size());
  double worst = 0.0;
  double sum = 0.0;
  for (TokenId i = 0; i < nt; ++i) sum += marginal_prob(t, i);
  worst = std::max(worst, std::abs(sum - 1.0));

  std::mt19937 rng(3003);
  for (int k = 0; k < 100; ++k) {
    std::vector<TokenId> bag;
    const size_t m = 1 + rng() % 6;
    while (bag.size() < m) {
      const auto s = static_cast<TokenId>(rng() % static_cast<uint32_t>(ns));
      if (t.col_sum(s) > 0.0) bag.push_back(s);
    }
    const ConditionalScorer p(t, bag);
    double total = 0.0;
    for (TokenId i = 0; i < nt; ++i) total += p(i);
    worst = std::max(worst, std::abs(total - 1.0));
  }
  size_t columns = 0;
  for (TokenId s = 0; s < ns; ++s) {
    if (t.col_sum(s) <= 0.0) continue;
    ++columns;
    double total = 0.0;
    for (TokenId i = 0; i < nt; ++i) total += align_prob(t, i, s);
    worst = std::max(worst, std::abs(total - 1.0));
  }
  // Context-restricted columns: sums over the substring set.
  for (size_t k = 0; k < 50; ++k) {
    const std::string context = normalize(targets[k]);
    const auto subs = substring_tokens(t, context);
    for (TokenId s = 0; s < ns; ++s) {
      double denom = 0.0;
      for (TokenId u : subs) denom += t.count(u, s);
      if (denom <= 0.0) continue;
      double total = 0.0;
      for (TokenId u : subs) total += align_prob(t, u, s, context);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  double min_mi = 0.0;
  for (TokenId i = 0; i < nt; ++i) min_mi = std::min(min_mi, mutual_information(t, i));
  return {worst <= 1e-9 && min_mi >= -1e-12, "max |sum - 1| = " + fmt("%.2e", worst) + " over " +
                                                 std::to_string(columns) + " columns and 100 bags, min MI " +
                                                 fmt("%.2e", min_mi)};
}

struct CipherRun {
  testing::CipherCorpus corpus;
  std::string src, tgt, model_path, baseline_path;
  PairedModel model;
  double train_seconds = 0.0;
};

// 4. Cipher corpus through the command line tool.
Outcome cipher_end_to_end(const testing::Scratch& dir, CipherRun& run) {
  run.src = dir.write("cipher.src", run.corpus.source);
  run.tgt = dir.write("cipher.tgt", run.corpus.target);
  run.model_path = dir.path("cipher.json");
  run.baseline_path = dir.path("baseline.json");
  const auto t0 = Clock::now();
  const auto train = dir.run("train --source " + run.src + " --target " + run.tgt +
                             " --variant expected --vocab-size 64 -o " + run.model_path);
  run.train_seconds = seconds_since(t0);
  if (train.status != 0) return {false, "train exited with " + std::to_string(train.status) + ": " + train.err};
  run.model = std::get<PairedModel>(load_model(run.model_path));
  if (dir.run("train --type unigram --input " + run.tgt + " --vocab-size 64 -o " + run.baseline_path).status != 0) {
    return {false, "baseline training failed"};
  }

  // Cipher-image recovery over every retained piece.
  const CoocTable& t = run.model.table;
  size_t hits = 0;
  size_t char_hits = 0;
  size_t chars = 0;
  for (TokenId id = 0; id < static_cast<TokenId>(t.target_size()); ++id) {
    TokenId best = -1;
    double best_p = -1.0;
    for (TokenId s = 0; s < static_cast<TokenId>(t.source_size()); ++s) {
      const double p = align_prob(t, id, s);
      if (p > best_p) {
        best_p = p;
        best = s;
      }
    }
    const bool ok = t.source(best) == run.corpus.cipher.decipher(t.target(id));
    hits += ok;
    if (is_single_char(t.target(id))) {
      ++chars;
      char_hits += ok;
    }
  }
  const double recovery = static_cast<double>(hits) / static_cast<double>(t.target_size());

  // Concatenation identity on paired tokenization of every line.
  const auto tok = dir.run("tokenize -m " + run.model_path + " --mode paired --source " + run.src + " -i " + run.tgt);
  const Strings lines = testing::split_lines(tok.out);
  size_t concat_ok = 0;
  for (size_t i = 0; i < lines.size() && i < run.corpus.target.size(); ++i) {
    concat_ok += concat(split_tokens(lines[i])) == normalize(run.corpus.target[i]);
  }
  const bool concat_all = tok.status == 0 && lines.size() == run.corpus.target.size() && concat_ok == lines.size();

  // Fertility against the unigram baseline, both from eval reports.
  auto fertility_of = [&](const std::string& m) {
    const auto r = dir.run("eval -m " + m + " -b " + run.baseline_path + " --source " + run.src + " --target " +
                           run.tgt);
    return r.status == 0 ? Json::parse(r.out)["fertility"]["value"].get<double>() : -1.0;
  };
  const double ours = fertility_of(run.model_path);
  const double base = fertility_of(run.baseline_path);
  const bool fert_ok = ours > 0 && base > 0 && std::abs(ours - base) <= 0.3;

  const bool pass = run.train_seconds < 300.0 && recovery >= 0.95 && concat_all && fert_ok;
  return {pass, "train " + fmt("%.1f", run.train_seconds) + " s; recovery " + std::to_string(hits) + "/" +
                    std::to_string(t.target_size()) + " = " + fmt("%.3f", recovery) + " (need 0.95; characters " +
                    std::to_string(char_hits) + "/" + std::to_string(chars) + ", longer pieces " +
                    std::to_string(hits - char_hits) + "/" + std::to_string(t.target_size() - chars) +
                    "); concatenation " + std::to_string(concat_ok) + "/" + std::to_string(run.corpus.target.size()) +
                    "; fertility " + fmt("%.3f", ours) + " vs baseline " + fmt("%.3f", base)};
}

std::vector<WordPairExample> cipher_examples(const testing::CipherCorpus& corpus, const UnigramModel& source_model) {
  PipelineOptions options;
  options.source_model = source_model;
  const NormalizedCorpus text = normalize_corpus({corpus.source, corpus.target});
  Ibm1Config ic;
  return make_examples(corpus_word_pairs(text, align_words(text, ic)), source_model);
}

// 5. Character floor over a set of training runs, plus the command line model.
Outcome character_floor(const CipherRun& run, const std::vector<WordPairExample>& examples) {
  size_t runs = 0;
  size_t violations = 0;
  for (auto variant : {TrainVariant::kExpected, TrainVariant::kHardEm}) {
    for (size_t vocab : {40, 64, 120}) {
      for (bool normalized : {false, true}) {
        TrainConfig config;
        config.vocab_size = vocab;
        config.variant = variant;
        config.normalize_posterior = normalized;
        std::set<std::string> first;
        bool seen = false;
        train_paired(examples, run.model.source_model, config, [&](const TrainProgress&, const CoocTable& t) {
          auto chars = single_chars(t);
          if (!seen) {
            first = std::move(chars);
            seen = true;
          } else if (chars != first) {
            ++violations;
          }
        });
        ++runs;
      }
    }
  }
  Strings normalized;
  for (const auto& l : run.corpus.target) normalized.push_back(normalize(l));
  const bool cli_ok = single_chars(run.model.table) == chars_of(normalized);
  return {violations == 0 && cli_ok, std::to_string(runs) + " training runs, " + std::to_string(violations) +
                                         " phases with a changed character set; command line model " +
                                         (cli_ok ? "keeps" : "LOSES") + " every target character"};
}

// 6. Hard-EM keeps nothing that the first Viterbi pass did not produce.
Outcome hard_em_collapse(const CipherRun& run, const std::vector<WordPairExample>& examples) {
  TrainConfig config;
  config.vocab_size = 64;
  config.variant = TrainVariant::kHardEm;
  const CoocTable init = init_table(examples, source_vocabulary(run.model.source_model), config.max_piece_len, config);
  std::set<std::string> produced;
  for (const auto& ex : examples) {
    const Utf8Text text(ex.target);
    const ConditionalScorer p(init, ex.source);
    for (const Span& s : viterbi(text, target_scorer(init, text, p), config.max_piece_len)) {
      produced.emplace(text.span(s.begin, s.end));
    }
  }
  const PairedModel model = train_paired(examples, run.model.source_model, config);
  size_t extra = 0;
  for (const auto& s : model.table.target_vocab().strings()) {
    if (!is_single_char(s) && !produced.count(s)) ++extra;
  }
  return {extra == 0, std::to_string(produced.size()) + " pieces from the first Viterbi pass, final vocabulary " +
                          std::to_string(model.table.target_size()) + ", " + std::to_string(extra) +
                          " final pieces never produced"};
}

// 7. Metric identities.
Outcome metric_identities(const testing::Scratch& dir, const CipherRun& run) {
  const auto r = dir.run("eval -m " + run.baseline_path + " -b " + run.baseline_path + " --source " + run.tgt +
                         " --target " + run.tgt);
  bool report_ok = r.status == 0;
  if (report_ok) {
    const Json j = Json::parse(r.out);
    for (const char* key : {"parity", "length_ratio", "renyi_ratio", "vocab_overlap"}) {
      report_ok = report_ok && j.contains(key) && j[key]["value"].get<double>() == 1.0;
    }
    for (const char* key : {"\"parity\"", "\"length_ratio\"", "\"renyi_ratio\"", "\"vocab_overlap\""}) {
      const size_t at = r.out.find(key);
      report_ok = report_ok && at != std::string::npos && r.out.find("\"value\": 1.000000}", at) != std::string::npos;
    }
  }
  const std::vector<AlignmentLinks> links = {{{0, 0}, {1, 1}, {1, 2}}};
  const AlignmentRates rates = alignment_metrics(links, std::vector<size_t>{3});
  const bool rates_ok = std::abs(rates.one_to_one - 1.0 / 3) < 1e-15 && std::abs(rates.unaligned - 1.0 / 3) < 1e-15;

  std::mt19937 rng(7007);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> f(100);
  double total = 0.0;
  for (double& x : f) total += (x = u(rng));
  double shannon = 0.0;
  for (double x : f) shannon -= x / total * std::log(x / total);
  double gap = 0.0;
  for (double alpha : {1.0, 1.0 + 1e-7, 1.0 - 1e-7}) gap = std::max(gap, std::abs(renyi_entropy(f, alpha) - shannon));
  return {report_ok && rates_ok && gap <= 1e-6,
          std::string("self-comparison report ") + (report_ok ? "exact" : "NOT exact") + "; alignment rates (" +
              fmt("%.6f", rates.one_to_one) + ", " + fmt("%.6f", rates.unaligned) + "); Renyi/Shannon gap " +
              fmt("%.2e", gap)};
}

// 8. Byte-identical artifacts from repeated deterministic runs.
Outcome determinism(const testing::Scratch& dir, const CipherRun& run) {
  std::vector<std::string> models;
  std::vector<std::string> reports;
  for (const char* threads : {"1", "4", "4"}) {
    const std::string m = dir.path(std::string("det_") + threads + "_" + std::to_string(models.size()) + ".json");
    const auto t = dir.run("train --source " + run.src + " --target " + run.tgt +
                           " --vocab-size 64 --deterministic --threads " + threads + " -o " + m);
    if (t.status != 0) return {false, "train failed: " + t.err};
    const auto e = dir.run("eval -m " + m + " -b " + run.baseline_path + " --source " + run.src + " --target " +
                           run.tgt);
    if (e.status != 0) return {false, "eval failed: " + e.err};
    models.push_back(read_file(m));
    reports.push_back(e.out);
  }
  const bool same = models[0] == models[1] && models[1] == models[2] && reports[0] == reports[1] &&
                    reports[1] == reports[2];
  return {same, std::string("3 runs (1, 4, 4 threads): models ") +
                    (models[0] == models[1] && models[1] == models[2] ? "identical" : "DIFFER") + " (" +
                    std::to_string(models[0].size()) + " bytes), reports " +
                    (reports[0] == reports[1] && reports[1] == reports[2] ? "identical" : "DIFFER")};
}

// Mixed-script, punctuation-heavy parallel lines.
std::pair<Strings, Strings> mixed_corpus(size_t n, uint32_t seed) {
  std::mt19937 rng(seed);
  const Strings words = {"Nous", "avons", "trouvé", "l'école", "très", "grande", "Straße", "naïve", "ﬁn",
                         "cœur", "año", "Zürich", "über", "déjà", "Ελλάδα", "мир", "東京", "２０２４", "x", "of"};
  const Strings source_words = {"we", "have", "found", "the", "school", "very", "big", "street", "naive", "end",
                                "heart", "year", "over", "already", "Greece", "world", "Tokyo", "2024", "and", "a"};
  const Strings punct = {",", ".", "!", "?", ";", ":", "«", "»", "\"", "'", "(", ")", "-", "…", "\u2014", "¿", "¡"};
  const Strings spaces = {" ", " ", " ", "  ", "\t", "  "};
  auto line = [&](const Strings& vocab) {
    std::string s;
    if (rng() % 4 == 0) s += spaces[rng() % spaces.size()];
    const size_t len = 1 + rng() % 9;
    for (size_t k = 0; k < len; ++k) {
      if (rng() % 3 == 0) s += punct[rng() % punct.size()];
      s += vocab[rng() % vocab.size()];
      if (rng() % 3 == 0) s += punct[rng() % punct.size()];
      if (k + 1 < len) s += spaces[rng() % spaces.size()];
    }
    if (rng() % 4 == 0) s += spaces[rng() % spaces.size()];
    return s;
  };
  Strings src, tgt;
  for (size_t i = 0; i < n; ++i) {
    src.push_back(line(source_words));
    tgt.push_back(i % 50 == 0 ? "" : line(words));
  }
  return {src, tgt};
}

// 9. detokenize(tokenize(x)) equals the marker-mapped normalization of x.
Outcome round_trip(const testing::Scratch& dir) {
  const auto [train_src, train_tgt] = mixed_corpus(800, 9009);
  const auto [test_src, test_tgt] = mixed_corpus(1000, 9119);
  const std::string ts = dir.write("mixed_train.src", train_src);
  const std::string tt = dir.write("mixed_train.tgt", train_tgt);
  const std::string s = dir.write("mixed.src", test_src);
  const std::string t = dir.write("mixed.tgt", test_tgt);
  const std::string paired = dir.path("mixed_paired.json");
  const std::string uni = dir.path("mixed_uni.json");
  if (dir.run("train --source " + ts + " --target " + tt + " --vocab-size 150 -o " + paired).status != 0 ||
      dir.run("train --type unigram --input " + tt + " --vocab-size 150 -o " + uni).status != 0) {
    return {false, "training on the mixed corpus failed"};
  }
  Strings expected;
  for (const auto& l : test_tgt) expected.push_back(markers_to_spaces(normalize(l)));
  std::string detail;
  bool pass = true;
  for (const auto& [mode, model, extra] : {std::tuple{"paired", paired, " --source " + s},
                                          std::tuple{"marginal", paired, std::string()},
                                          std::tuple{"unigram", uni, std::string()}}) {
    const std::string tok = dir.path(std::string("mixed_") + mode + ".tok");
    const auto a = dir.run("tokenize -m " + model + " --mode " + mode + extra + " -i " + t + " -o " + tok);
    const auto b = dir.run("detokenize -i " + tok);
    const Strings got = testing::split_lines(b.out);
    size_t ok = 0;
    for (size_t i = 0; i < got.size() && i < expected.size(); ++i) ok += got[i] == expected[i];
    const bool mode_ok = a.status == 0 && b.status == 0 && got.size() == expected.size() && ok == expected.size();
    pass = pass && mode_ok;
    if (!detail.empty()) detail += ", ";
    detail += std::string(mode) + " " + std::to_string(ok) + "/" + std::to_string(expected.size());
  }
  return {pass, detail};
}

}  // namespace
}  // namespace altok

int main() {
  using namespace altok;
  testing::Scratch dir("acceptance");
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("criterion %d %s: %s (%s)\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  };
  auto guarded = [&](auto&& fn) -> Outcome {
    try {
      return fn();
    } catch (const std::exception& e) {
      return {false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "viterbi oracle", guarded([] { return viterbi_oracle(); }));
  report(2, "expected-count oracle", guarded([] { return estep_oracle(); }));

  CipherRun run{testing::make_cipher_corpus(5000), {}, {}, {}, {}, {}, 0.0};
  const Outcome cipher = guarded([&] { return cipher_end_to_end(dir, run); });
  const bool have_model = run.model.table.target_size() > 0;
  report(3, "probability normalization",
         have_model ? guarded([&] { return normalization(run.model, run.corpus.target); })
                    : Outcome{false, "no cipher model"});
  report(4, "cipher end-to-end", cipher);
  std::vector<WordPairExample> examples;
  if (have_model) {
    testing::CipherCorpus small = testing::make_cipher_corpus(1000);
    examples = cipher_examples(small, run.model.source_model);
  }
  report(5, "character floor",
         have_model ? guarded([&] { return character_floor(run, examples); }) : Outcome{false, "no cipher model"});
  report(6, "hard-EM vocabulary collapse",
         have_model ? guarded([&] { return hard_em_collapse(run, examples); }) : Outcome{false, "no cipher model"});
  report(7, "metric identities",
         have_model ? guarded([&] { return metric_identities(dir, run); }) : Outcome{false, "no cipher model"});
  report(8, "determinism",
         have_model ? guarded([&] { return determinism(dir, run); }) : Outcome{false, "no cipher model"});
  report(9, "round trip", guarded([&] { return round_trip(dir); }));

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
