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

// Unigram language-model tokenizer: the fixed source-side tokenizer and the
// target-side baseline. Training seeds the vocabulary with frequent
// substrings, re-estimates piece probabilities with EM over the segmentation
// lattice and prunes the pieces whose removal costs the least likelihood.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "altok/common.hpp"
#include "altok/error.hpp"
#include "altok/lattice.hpp"
#include "altok/textnorm.hpp"
#include "altok/utf8.hpp"

namespace altok {

struct UnigramPiece {
  std::string piece;
  double log_prob = 0.0;
  friend bool operator==(const UnigramPiece&, const UnigramPiece&) = default;
};

struct Token {
  std::string piece;
  int32_t id = 0;
  friend bool operator==(const Token&, const Token&) = default;
};

inline std::vector<std::string> token_strings(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.piece);
  return out;
}

// Names of the reserved unknown and NULL symbols; never learned as pieces.
inline bool is_reserved_piece(std::string_view s) { return s == "<unk>" || s == "<null>"; }

// Score given to a character missing from the vocabulary, relative to the
// least probable piece.
inline constexpr double kUnkPenalty = 10.0;

class UnigramModel {
 public:
  static constexpr int32_t kUnkId = 0;
  static constexpr std::string_view kUnkPiece = "<unk>";

  UnigramModel() = default;

  // The longest piece bounds the lattice width.
  // Pieces are stored in canonical order: descending log probability, then
  // byte-lexicographic. Id 0 is reserved for the unknown piece, so pieces()[i]
  // has id i + 1.
  explicit UnigramModel(std::vector<UnigramPiece> pieces) : pieces_(std::move(pieces)) {
    std::sort(pieces_.begin(), pieces_.end(), [](const UnigramPiece& a, const UnigramPiece& b) {
      if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
      return a.piece < b.piece;
    });
    index_ = StringIndex();
    index_.add(std::string(kUnkPiece));
    max_piece_len_ = 1;
    double min_lp = 0.0;
    for (const auto& p : pieces_) {
      if (p.piece.empty() || !is_valid_utf8(p.piece)) throw FormatError("invalid piece in unigram model");
      if (!std::isfinite(p.log_prob)) throw FormatError("non-finite log probability for '" + p.piece + "'");
      if (index_.find(p.piece) >= 0) throw FormatError("duplicate piece '" + p.piece + "'");
      index_.add(p.piece);
      min_lp = std::min(min_lp, p.log_prob);
      max_piece_len_ = std::max(max_piece_len_, utf8_length(p.piece));
    }
    unk_log_prob_ = min_lp - kUnkPenalty;
  }

  const std::vector<UnigramPiece>& pieces() const { return pieces_; }
  size_t size() const { return pieces_.size(); }
  size_t max_piece_len() const { return max_piece_len_; }

  // Unknown pieces map to kUnkId.
  int32_t id(std::string_view piece) const {
    const int32_t i = index_.find(piece);
    return i < 0 ? kUnkId : i;
  }
  bool contains(std::string_view piece) const { return index_.find(piece) > kUnkId; }
  const std::string& piece(int32_t id) const { return index_[id]; }
  // Every id's string, "<unk>" first.
  const std::vector<std::string>& id_strings() const { return index_.strings(); }

  double log_prob(int32_t id) const {
    return id == kUnkId ? unk_log_prob_ : pieces_[static_cast<size_t>(id - 1)].log_prob;
  }

  // Best segmentation of normalized text. Characters outside the vocabulary
  // come out as single-character tokens with id kUnkId.
  std::vector<Token> encode(std::string_view normalized) const {
    const Utf8Text text{std::string(normalized)};
    auto scorer = [&](size_t b, size_t e) -> std::optional<Arc> {
      const int32_t i = index_.find(text.span(b, e));
      if (i > kUnkId) return Arc{i, log_prob(i)};
      if (e - b == 1) return Arc{kUnkId, unk_log_prob_};
      return std::nullopt;
    };
    std::vector<Token> out;
    for (const Span& s : viterbi(text, scorer, max_piece_len_)) {
      out.push_back({std::string(text.span(s.begin, s.end)), s.id});
    }
    return out;
  }

  std::vector<std::string> tokenize(std::string_view normalized) const {
    return token_strings(encode(normalized));
  }

  friend bool operator==(const UnigramModel& a, const UnigramModel& b) {
    return a.pieces_ == b.pieces_;
  }

 private:
  std::vector<UnigramPiece> pieces_;
  size_t max_piece_len_ = 1;
  StringIndex index_{std::vector<std::string>{std::string(kUnkPiece)}};
  double unk_log_prob_ = -kUnkPenalty;
};

struct UnigramEmStats {
  size_t round = 0;          // prune round, 0-based
  size_t sub_iteration = 0;  // EM step within the round, 0-based
  size_t vocab_size = 0;
  double log_likelihood = 0.0;
};

struct UnigramTrainerConfig {
  size_t vocab_size = 8000;
  size_t max_piece_len = kDefaultMaxPieceLen;
  // Seed candidates kept, as a multiple of vocab_size.
  size_t seed_factor = 20;
  double shrink_factor = 0.75;
  size_t num_sub_iterations = 2;
  unsigned threads = 1;
  bool deterministic = true;
  std::function<void(const UnigramEmStats&)> on_em_step;
};

// Number of multi-character pieces a pruning step keeps when `n_multi` are
// present, `n_chars` single characters are always kept, and the vocabulary
// budget is `target_size`. The shrink step always removes at least one piece.
inline size_t prune_keep_count(size_t n_multi, size_t n_chars, size_t target_size, double shrink_factor) {
  const size_t budget = target_size > n_chars ? target_size - n_chars : 0;
  if (n_multi <= budget) return n_multi;
  const auto shrunk = static_cast<size_t>(std::ceil(shrink_factor * static_cast<double>(n_multi)));
  return std::max(budget, std::min(shrunk, n_multi - 1));
}

namespace detail {

struct WordCount {
  Utf8Text text;
  double freq = 0.0;
};

inline std::vector<WordCount> count_words(std::span<const std::string> corpus) {
  std::map<std::string, double> counts;
  for (const auto& line : corpus) {
    for (auto& w : pretokenize(line)) counts[std::move(w)] += 1.0;
  }
  std::vector<WordCount> words;
  words.reserve(counts.size());
  for (auto& [w, f] : counts) words.push_back({Utf8Text(w), f});
  return words;
}

struct UnigramEStep {
  std::vector<double> expected;
  double log_likelihood = 0.0;
};

}  // namespace detail

inline UnigramModel train_unigram(std::span<const std::string> corpus, const UnigramTrainerConfig& config) {
  if (corpus.empty()) throw ConfigError("unigram training corpus is empty");
  if (config.vocab_size == 0) throw ConfigError("vocab_size must be positive");
  if (!(config.shrink_factor > 0.0 && config.shrink_factor < 1.0)) {
    throw ConfigError("shrink_factor must be in (0, 1)");
  }
  if (config.max_piece_len == 0) throw ConfigError("max_piece_len must be positive");
  const size_t sub_iterations = std::max<size_t>(1, config.num_sub_iterations);
  const auto words = detail::count_words(corpus);

  // Seed: every character plus the most promising substrings.
  std::map<std::string, double> char_counts;
  std::unordered_map<std::string, double, StringHash, std::equal_to<>> substr_counts;
  for (const auto& [text, freq] : words) {
    const size_t n = text.size();
    for (size_t b = 0; b < n; ++b) {
      char_counts[std::string(text.at(b))] += freq;
      for (size_t e = b + 2; e <= std::min(n, b + config.max_piece_len); ++e) {
        substr_counts[std::string(text.span(b, e))] += freq;
      }
    }
  }
  if (char_counts.empty()) throw ConfigError("unigram training corpus has no characters");
  if (config.vocab_size < char_counts.size()) {
    throw ConfigError("vocab_size " + std::to_string(config.vocab_size) + " is below the " +
                      std::to_string(char_counts.size()) + " distinct characters of the corpus");
  }
  std::vector<std::pair<std::string, double>> seeds;
  seeds.reserve(substr_counts.size());
  for (auto& [s, f] : substr_counts) {
    if (!is_reserved_piece(s)) seeds.emplace_back(s, f);
  }
  auto seed_rank = [](const auto& a, const auto& b) {
    const double sa = a.second * static_cast<double>(utf8_length(a.first));
    const double sb = b.second * static_cast<double>(utf8_length(b.first));
    if (sa != sb) return sa > sb;
    return a.first < b.first;
  };
  const size_t seed_cap = config.seed_factor * config.vocab_size;
  if (seeds.size() > seed_cap) {
    std::partial_sort(seeds.begin(), seeds.begin() + static_cast<std::ptrdiff_t>(seed_cap), seeds.end(), seed_rank);
    seeds.resize(seed_cap);
  }
  std::sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::string> pieces;
  std::vector<double> log_probs;
  {
    double total = 0.0;
    for (const auto& [c, f] : char_counts) total += f;
    for (const auto& [s, f] : seeds) total += f;
    for (const auto& [c, f] : char_counts) {
      pieces.push_back(c);
      log_probs.push_back(std::log(f / total));
    }
    for (const auto& [s, f] : seeds) {
      pieces.push_back(s);
      log_probs.push_back(std::log(f / total));
    }
  }

  const unsigned threads = resolve_threads(config.threads);
  const size_t chunks = reduction_chunks(config.deterministic, threads);

  auto e_step = [&](const StringIndex& index) {
    auto partials = map_chunks<detail::UnigramEStep>(
        words.size(), chunks, threads, [&](size_t begin, size_t end, detail::UnigramEStep& out) {
          out.expected.assign(index.size(), 0.0);
          for (size_t w = begin; w < end; ++w) {
            const auto& [text, freq] = words[w];
            Lattice lattice(
                text,
                [&](size_t b, size_t e) -> std::optional<Arc> {
                  const int32_t id = index.find(text.span(b, e));
                  if (id < 0) return std::nullopt;
                  return Arc{id, log_probs[static_cast<size_t>(id)]};
                },
                config.max_piece_len);
            const Marginals m = lattice.forward_backward();
            const double log_z = m.log_total();
            out.log_likelihood += freq * log_z;
            for (const LatticeNode& node : lattice.nodes()) {
              out.expected[static_cast<size_t>(node.id)] +=
                  freq * std::exp(m.log_alpha[node.begin] + node.log_prob + m.log_beta[node.end] - log_z);
            }
          }
        });
    detail::UnigramEStep merged;
    merged.expected.assign(index.size(), 0.0);
    for (const auto& p : partials) {
      for (size_t i = 0; i < p.expected.size(); ++i) merged.expected[i] += p.expected[i];
      merged.log_likelihood += p.log_likelihood;
    }
    return merged;
  };

  for (size_t round = 0;; ++round) {
    std::vector<double> expected;
    for (size_t sub = 0; sub < sub_iterations; ++sub) {
      const StringIndex index(pieces);
      detail::UnigramEStep step = e_step(index);
      if (config.on_em_step) config.on_em_step({round, sub, pieces.size(), step.log_likelihood});
      // M-step. Pieces that lost all mass are dropped; characters stay.
      double total = 0.0;
      for (double c : step.expected) total += c;
      std::vector<std::string> kept;
      std::vector<double> kept_lp;
      expected.clear();
      for (size_t i = 0; i < pieces.size(); ++i) {
        double c = step.expected[i];
        const bool single = utf8_length(pieces[i]) == 1;
        if (c <= 0.0 && !single) continue;
        c = std::max(c, std::numeric_limits<double>::min());
        kept.push_back(pieces[i]);
        kept_lp.push_back(std::log(c / total));
        expected.push_back(c);
      }
      pieces = std::move(kept);
      log_probs = std::move(kept_lp);
    }
    if (pieces.size() <= config.vocab_size) break;

    // Prune by likelihood loss: how much worse the corpus gets when a piece
    // is replaced by its best segmentation into the remaining pieces.
    const StringIndex index(pieces);
    std::vector<std::pair<double, size_t>> ranked;
    size_t n_chars = 0;
    for (size_t i = 0; i < pieces.size(); ++i) {
      const Utf8Text text(pieces[i]);
      if (text.size() == 1) {
        ++n_chars;
        continue;
      }
      const auto alt = viterbi(
          text,
          [&](size_t b, size_t e) -> std::optional<Arc> {
            if (b == 0 && e == text.size()) return std::nullopt;
            const int32_t id = index.find(text.span(b, e));
            if (id < 0) return std::nullopt;
            return Arc{id, log_probs[static_cast<size_t>(id)]};
          },
          config.max_piece_len);
      double alt_lp = 0.0;
      for (const Span& s : alt) alt_lp += log_probs[static_cast<size_t>(s.id)];
      ranked.emplace_back(expected[i] * (log_probs[i] - alt_lp), i);
    }
    const size_t keep = prune_keep_count(ranked.size(), n_chars, config.vocab_size, config.shrink_factor);
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return pieces[a.second] < pieces[b.second];
    });
    std::vector<bool> retain(pieces.size(), false);
    for (size_t i = 0; i < pieces.size(); ++i) retain[i] = utf8_length(pieces[i]) == 1;
    for (size_t k = 0; k < keep; ++k) retain[ranked[k].second] = true;
    std::vector<std::string> kept;
    std::vector<double> kept_lp;
    double mass = 0.0;
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (retain[i]) mass += std::exp(log_probs[i]);
    }
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (!retain[i]) continue;
      kept.push_back(pieces[i]);
      kept_lp.push_back(log_probs[i] - std::log(mass));
    }
    pieces = std::move(kept);
    log_probs = std::move(kept_lp);
  }

  std::vector<UnigramPiece> out;
  out.reserve(pieces.size());
  for (size_t i = 0; i < pieces.size(); ++i) out.push_back({pieces[i], log_probs[i]});
  return UnigramModel(std::move(out));
}

}  // namespace altok
