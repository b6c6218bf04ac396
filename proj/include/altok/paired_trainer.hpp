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

#pragma once

// Training of the conditional tokenizer. The target vocabulary starts as
// every character span of the training words; each count step re-estimates
// the co-occurrence table from the current one, and every few steps the
// target tokens sharing the least mutual information with the source side
// are pruned. Single characters are never pruned.

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "altok/common.hpp"
#include "altok/cooc_table.hpp"
#include "altok/error.hpp"
#include "altok/lattice.hpp"
#include "altok/paired_model.hpp"
#include "altok/unigram.hpp"
#include "altok/utf8.hpp"
#include "altok/word_aligner.hpp"

namespace altok {

// Converts aligned word pairs into training examples, tokenizing source
// words with the fixed source model.
inline std::vector<WordPairExample> make_examples(std::span<const WordPair> pairs, const UnigramModel& source_model) {
  std::vector<WordPairExample> out;
  out.reserve(pairs.size());
  for (const WordPair& p : pairs) {
    if (p.target.empty()) continue;
    WordPairExample ex;
    ex.target = p.target;
    if (p.source) {
      for (const Token& t : source_model.encode(*p.source)) ex.source.push_back(to_source_id(t.id));
    }
    if (ex.source.empty()) ex.source.push_back(kNullSource);
    out.push_back(std::move(ex));
  }
  return out;
}

enum class TrainPhase { kInit, kCount, kPrune, kFinal };

struct TrainProgress {
  TrainPhase phase = TrainPhase::kInit;
  size_t iteration = 0;  // 1-based count step; 0 for init
  size_t vocab_size = 0;
  // Sum over examples of the log total marginal; count phases only.
  double log_likelihood = 0.0;
};

using TrainObserver = std::function<void(const TrainProgress&, const CoocTable&)>;

namespace detail {

struct Prepared {
  Utf8Text target;
  std::span<const TokenId> source;
};

inline std::vector<Prepared> prepare(std::span<const WordPairExample> examples) {
  std::vector<Prepared> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    if (ex.target.empty()) throw ConfigError("training example with an empty target word");
    if (ex.source.empty()) throw ConfigError("training example with an empty source bag");
    out.push_back({Utf8Text(ex.target), ex.source});
  }
  return out;
}

struct StepPartial {
  CoocBuilder counts;
  double log_likelihood = 0.0;
  std::vector<bool> emitted;
};

// Table restricted to `keep` (ascending target ids), counts remapped.
inline CoocTable restrict_targets(const CoocTable& table, const std::vector<TokenId>& keep) {
  std::vector<TokenId> remap(table.target_size(), -1);
  std::vector<std::string> vocab;
  vocab.reserve(keep.size());
  for (TokenId t : keep) {
    remap[static_cast<size_t>(t)] = static_cast<TokenId>(vocab.size());
    vocab.push_back(table.target(t));
  }
  std::vector<CoocEntry> entries;
  for (const CoocEntry& e : table.entries()) {
    const TokenId t = remap[static_cast<size_t>(e.target)];
    if (t >= 0) entries.push_back({t, e.source, e.count});
  }
  return CoocTable(std::move(vocab), table.source_vocab().strings(), std::move(entries));
}

// Adds any character of the examples missing from the target vocabulary,
// with an empty row.
inline CoocTable with_characters(const CoocTable& table, std::span<const Prepared> examples) {
  std::set<std::string> missing;
  for (const auto& ex : examples) {
    for (size_t i = 0; i < ex.target.size(); ++i) {
      if (table.target_id(ex.target.at(i)) < 0) missing.emplace(ex.target.at(i));
    }
  }
  if (missing.empty()) return table;
  std::set<std::string> all(table.target_vocab().strings().begin(), table.target_vocab().strings().end());
  all.insert(missing.begin(), missing.end());
  std::vector<std::string> vocab(all.begin(), all.end());
  const StringIndex index(vocab);
  std::vector<CoocEntry> entries = table.entries();
  for (auto& e : entries) e.target = index.find(table.target(e.target));
  return CoocTable(std::move(vocab), table.source_vocab().strings(), std::move(entries));
}

template <class PerExample>
std::vector<StepPartial> run_step(std::span<const Prepared> examples, const TrainConfig& config, size_t n_targets,
                                  PerExample&& per_example) {
  const unsigned threads = resolve_threads(config.threads);
  const size_t chunks = reduction_chunks(config.deterministic_reduction, threads);
  return map_chunks<StepPartial>(examples.size(), chunks, threads, [&](size_t b, size_t e, StepPartial& out) {
    out.emitted.assign(n_targets, false);
    for (size_t i = b; i < e; ++i) per_example(examples[i], out);
  });
}

inline double merge_partials(std::vector<StepPartial>& partials, CoocBuilder& merged) {
  double ll = 0.0;
  for (auto& p : partials) {
    merged.merge(p.counts);
    ll += p.log_likelihood;
  }
  return ll;
}

inline CoocTable init_table(std::span<const Prepared> examples, const std::vector<std::string>& source_vocab,
                            size_t max_piece_len, const TrainConfig& config) {
  std::set<std::string> spans;
  for (const auto& ex : examples) {
    const size_t n = ex.target.size();
    for (size_t b = 0; b < n; ++b) {
      for (size_t e = b + 1; e <= std::min(n, b + max_piece_len); ++e) spans.emplace(ex.target.span(b, e));
    }
  }
  std::vector<std::string> vocab(spans.begin(), spans.end());
  const StringIndex index(vocab);
  auto partials = run_step(examples, config, 0, [&](const Prepared& ex, StepPartial& out) {
    const size_t n = ex.target.size();
    for (size_t b = 0; b < n; ++b) {
      for (size_t e = b + 1; e <= std::min(n, b + max_piece_len); ++e) {
        const TokenId t = index.find(ex.target.span(b, e));
        for (TokenId s : ex.source) out.counts.add(t, s, 1.0);
      }
    }
  });
  CoocBuilder merged;
  merge_partials(partials, merged);
  return merged.build(std::move(vocab), source_vocab);
}

inline std::pair<CoocTable, double> expected_count_step(const CoocTable& current, std::span<const Prepared> examples,
                                                        const TrainConfig& config) {
  const CoocTable table = with_characters(current, examples);
  auto partials = run_step(examples, config, 0, [&](const Prepared& ex, StepPartial& out) {
    const std::string_view context = ex.target.str();
    const ConditionalScorer prob = config.substring_denominator
                                       ? ConditionalScorer(table, ex.source, context)
                                       : ConditionalScorer(table, ex.source);
    Lattice lattice(ex.target, target_scorer(table, ex.target, prob), config.max_piece_len);
    const Marginals m = lattice.forward_backward();
    const double log_z = m.log_total();
    out.log_likelihood += log_z;
    const double share = 1.0 / static_cast<double>(ex.source.size());
    for (const LatticeNode& node : lattice.nodes()) {
      double log_c = node.log_prob + m.log_alpha[node.begin] + m.log_beta[node.end];
      if (config.normalize_posterior) log_c -= log_z;
      const double c = std::exp(log_c) * share;
      for (TokenId s : ex.source) out.counts.add(node.id, s, c);
    }
  });
  CoocBuilder merged;
  const double ll = merge_partials(partials, merged);
  return {merged.build(table.target_vocab().strings(), table.source_vocab().strings()), ll};
}

inline std::pair<CoocTable, double> hard_em_step(const CoocTable& current, std::span<const Prepared> examples,
                                                 const TrainConfig& config) {
  const CoocTable table = with_characters(current, examples);
  auto partials = run_step(examples, config, table.target_size(), [&](const Prepared& ex, StepPartial& out) {
    const std::string_view context = ex.target.str();
    const ConditionalScorer prob = config.substring_denominator
                                       ? ConditionalScorer(table, ex.source, context)
                                       : ConditionalScorer(table, ex.source);
    Lattice lattice(ex.target, target_scorer(table, ex.target, prob), config.max_piece_len);
    const auto path = lattice.viterbi();
    out.log_likelihood += lattice.best().back();
    const double share = 1.0 / static_cast<double>(ex.source.size());
    for (const Span& sp : path) {
      out.emitted[static_cast<size_t>(sp.id)] = true;
      for (TokenId s : ex.source) out.counts.add(sp.id, s, share);
    }
  });
  std::vector<bool> emitted(table.target_size(), false);
  for (const auto& p : partials) {
    for (size_t t = 0; t < emitted.size(); ++t) emitted[t] = emitted[t] || p.emitted[t];
  }
  CoocBuilder merged;
  const double ll = merge_partials(partials, merged);
  const CoocTable counted = merged.build(table.target_vocab().strings(), table.source_vocab().strings());
  // Tokens Viterbi never produced leave the vocabulary; characters stay.
  std::vector<TokenId> keep;
  for (size_t t = 0; t < table.target_size(); ++t) {
    if (emitted[t] || is_single_char(table.target(static_cast<TokenId>(t)))) keep.push_back(static_cast<TokenId>(t));
  }
  return {restrict_targets(counted, keep), ll};
}

}  // namespace detail

// Initial table: every occurrence of every target span up to max_piece_len
// co-occurs once with every token of the example's source bag.
inline CoocTable init_table(std::span<const WordPairExample> examples, const std::vector<std::string>& source_vocab,
                            size_t max_piece_len, const TrainConfig& config = {}) {
  if (examples.empty()) throw ConfigError("no training examples");
  const auto prepared = detail::prepare(examples);
  return detail::init_table(prepared, source_vocab, max_piece_len, config);
}

// Fresh table of expected co-occurrences: each in-vocabulary span T[i:j]
// of an example adds p(T[i:j]|S) * alpha[i] * beta[j] / |S| to every source
// token of its bag.
inline CoocTable expected_count_step(const CoocTable& table, std::span<const WordPairExample> examples,
                                     const TrainConfig& config = {}) {
  const auto prepared = detail::prepare(examples);
  return detail::expected_count_step(table, prepared, config).first;
}

// Fresh table from Viterbi tokenizations: every produced token adds 1/|S| to
// each source token of the bag. Tokens never produced are dropped.
inline CoocTable hard_em_step(const CoocTable& table, std::span<const WordPairExample> examples,
                              const TrainConfig& config = {}) {
  const auto prepared = detail::prepare(examples);
  return detail::hard_em_step(table, prepared, config).first;
}

// Keeps every single character plus the multi-character tokens of highest
// mutual information with the source side, as many as prune_keep_count()
// allows. Tables already within target_size are returned unchanged.
inline CoocTable prune_vocab(const CoocTable& table, size_t target_size, double shrink_factor) {
  if (table.target_size() <= target_size) return table;
  std::vector<std::pair<double, TokenId>> ranked;
  std::vector<TokenId> keep;
  for (size_t t = 0; t < table.target_size(); ++t) {
    const auto id = static_cast<TokenId>(t);
    if (is_single_char(table.target(id))) {
      keep.push_back(id);
    } else {
      ranked.emplace_back(mutual_information(table, id), id);
    }
  }
  const size_t n = prune_keep_count(ranked.size(), keep.size(), target_size, shrink_factor);
  std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return table.target(a.second) < table.target(b.second);
  });
  for (size_t k = 0; k < n; ++k) keep.push_back(ranked[k].second);
  std::sort(keep.begin(), keep.end());
  return detail::restrict_targets(table, keep);
}

inline size_t count_characters(std::span<const WordPairExample> examples) {
  std::set<std::string> chars;
  for (const auto& ex : examples) {
    const Utf8Text t(ex.target);
    for (size_t i = 0; i < t.size(); ++i) chars.emplace(t.at(i));
  }
  return chars.size();
}

// Full training loop. With n_iterations == 0 the model is the initial table.
inline PairedModel train_paired(std::span<const WordPairExample> examples, const UnigramModel& source_model,
                                const TrainConfig& config, const TrainObserver& observer = {}) {
  config.validate();
  if (examples.empty()) throw ConfigError("no training examples");
  const auto prepared = detail::prepare(examples);
  const size_t n_chars = count_characters(examples);
  if (config.vocab_size < n_chars) {
    throw ConfigError("vocab_size " + std::to_string(config.vocab_size) + " is below the " + std::to_string(n_chars) +
                      " distinct target characters");
  }
  const auto source_vocab = source_vocabulary(source_model);
  for (const auto& ex : examples) {
    for (TokenId s : ex.source) {
      if (s < 0 || static_cast<size_t>(s) >= source_vocab.size()) throw ConfigError("source token id out of range");
    }
  }
  auto notify = [&](TrainPhase phase, size_t iteration, const CoocTable& t, double ll) {
    if (observer) observer({phase, iteration, t.target_size(), ll}, t);
  };

  CoocTable table = detail::init_table(prepared, source_vocab, config.max_piece_len, config);
  notify(TrainPhase::kInit, 0, table, 0.0);
  if (config.n_iterations > 0) {
    auto count = [&](const CoocTable& t) {
      return config.variant == TrainVariant::kExpected ? detail::expected_count_step(t, prepared, config)
                                                       : detail::hard_em_step(t, prepared, config);
    };
    for (size_t i = 1;; ++i) {
      auto [next, ll] = count(table);
      table = std::move(next);
      notify(TrainPhase::kCount, i, table, ll);
      if (i % config.n_subiterations == 0 && table.target_size() > config.vocab_size) {
        table = prune_vocab(table, config.vocab_size, config.shrink_factor);
        notify(TrainPhase::kPrune, i, table, ll);
      }
      if (i >= config.n_iterations && table.target_size() <= config.vocab_size) break;
    }
    auto [final_table, ll] = count(table);
    table = std::move(final_table);
    notify(TrainPhase::kFinal, 0, table, ll);
  }
  return PairedModel{source_model, std::move(table), config};
}

}  // namespace altok
