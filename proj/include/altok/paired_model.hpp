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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "altok/cooc_table.hpp"
#include "altok/error.hpp"
#include "altok/lattice.hpp"
#include "altok/textnorm.hpp"
#include "altok/unigram.hpp"

namespace altok {

enum class TrainVariant { kExpected, kHardEm };

inline std::string_view to_string(TrainVariant v) { return v == TrainVariant::kExpected ? "expected" : "hard_em"; }

inline TrainVariant parse_variant(std::string_view s) {
  if (s == "expected") return TrainVariant::kExpected;
  if (s == "hard_em") return TrainVariant::kHardEm;
  throw ConfigError("unknown training variant '" + std::string(s) + "'");
}

struct TrainConfig {
  size_t vocab_size = 8000;
  size_t max_piece_len = kDefaultMaxPieceLen;
  // Minimum number of count steps; training continues past it until the
  // vocabulary budget is met.
  size_t n_iterations = 8;
  // Prune after every this many count steps.
  size_t n_subiterations = 2;
  double shrink_factor = 0.75;
  TrainVariant variant = TrainVariant::kExpected;
  bool deterministic_reduction = true;
  // Divide expected counts by the example's total marginal.
  bool normalize_posterior = false;
  // Restrict p(t|S)'s denominator to substrings of the target string.
  bool substring_denominator = false;
  unsigned threads = 1;  // not persisted

  void validate() const {
    if (vocab_size == 0) throw ConfigError("vocab_size must be positive");
    if (max_piece_len == 0) throw ConfigError("max_piece_len must be positive");
    if (n_subiterations == 0) throw ConfigError("n_subiterations must be positive");
    if (!(shrink_factor > 0.0 && shrink_factor < 1.0)) throw ConfigError("shrink_factor must be in (0, 1)");
  }

  friend bool operator==(const TrainConfig& a, const TrainConfig& b) {
    return a.vocab_size == b.vocab_size && a.max_piece_len == b.max_piece_len && a.n_iterations == b.n_iterations &&
           a.n_subiterations == b.n_subiterations && a.shrink_factor == b.shrink_factor && a.variant == b.variant &&
           a.deterministic_reduction == b.deterministic_reduction && a.normalize_posterior == b.normalize_posterior &&
           a.substring_denominator == b.substring_denominator;
  }
};

// Source token ids index the table's source vocabulary: NULL at 0, then the
// source unigram model's ids shifted by one (so its <unk> is 1).
inline constexpr TokenId kNullSource = 0;
inline constexpr std::string_view kNullPiece = "<null>";

inline std::vector<std::string> source_vocabulary(const UnigramModel& model) {
  std::vector<std::string> vocab;
  vocab.reserve(model.id_strings().size() + 1);
  vocab.emplace_back(kNullPiece);
  for (const auto& s : model.id_strings()) vocab.push_back(s);
  return vocab;
}

inline TokenId to_source_id(int32_t unigram_id) { return unigram_id + 1; }

// Bag of source tokens of a normalized sentence or word, tokenized word by
// word. A marker-only string gives an empty bag.
inline std::vector<TokenId> source_bag(const UnigramModel& model, std::string_view normalized) {
  std::vector<TokenId> bag;
  for (const auto& word : pretokenize(normalized)) {
    for (const Token& t : model.encode(word)) bag.push_back(to_source_id(t.id));
  }
  return bag;
}

// One aligned training pair: the source word as a bag of source token ids
// (just kNullSource for unaligned target words) and the target word.
struct WordPairExample {
  std::vector<TokenId> source;
  std::string target;
  friend bool operator==(const WordPairExample&, const WordPairExample&) = default;
};

// Log score of a single character the table gives no probability, so that
// decoding never fails. Far below any count-derived probability.
inline constexpr double kCharFloorLogProb = -30.0;

// Lattice scorer over `text` for a probability function on target ids.
// In-vocabulary pieces with positive probability become arcs; a single
// character otherwise gets the floor score (id -1 when it is unknown).
template <class Prob>
auto target_scorer(const CoocTable& table, const Utf8Text& text, const Prob& prob) {
  return [&table, &text, &prob](size_t b, size_t e) -> std::optional<Arc> {
    const TokenId id = table.target_id(text.span(b, e));
    if (id >= 0) {
      const double p = prob(id);
      if (p > 0.0) return Arc{id, std::log(p)};
    }
    if (e - b == 1) return Arc{id, kCharFloorLogProb};
    return std::nullopt;
  };
}

// Trained conditional tokenizer. The same table serves the conditional
// (source-aware) and the marginal (target-only) tokenizers.
struct PairedModel {
  UnigramModel source_model;
  CoocTable table;
  TrainConfig config;

  friend bool operator==(const PairedModel&, const PairedModel&) = default;
};

}  // namespace altok
