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

// Inference over a trained PairedModel: conditional tokenization given the
// source sentence, marginal tokenization from the target alone, and token
// alignment as a by-product of the table.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "altok/cooc_table.hpp"
#include "altok/lattice.hpp"
#include "altok/paired_model.hpp"
#include "altok/utf8.hpp"

namespace altok {

namespace detail {

template <class Prob>
std::vector<Token> decode_target(const PairedModel& model, const Utf8Text& text, const Prob& prob) {
  const size_t width = std::max(model.config.max_piece_len, model.table.max_target_len());
  std::vector<Token> out;
  for (const Span& s : viterbi(text, target_scorer(model.table, text, prob), width)) {
    out.push_back({std::string(text.span(s.begin, s.end)), s.id});
  }
  return out;
}

}  // namespace detail

// Target-only tokenization under p(t) = row_sum(t) / total. Characters the
// table does not know come out as single-character tokens with id -1.
inline std::vector<Token> encode_marginal(const PairedModel& model, std::string_view target) {
  const Utf8Text text{std::string(target)};
  const double total = model.table.total();
  auto prob = [&](TokenId t) { return total > 0.0 ? model.table.row_sum(t) / total : 0.0; };
  return detail::decode_target(model, text, prob);
}

inline std::vector<std::string> tokenize_marginal(const PairedModel& model, std::string_view target) {
  return token_strings(encode_marginal(model, target));
}

struct PairedEncoding {
  std::vector<Token> tokens;
  std::vector<TokenId> source_bag;
  // Set when the source gave no tokens and marginal decoding was used.
  bool fell_back_to_marginal = false;
};

// Conditional tokenization: the source sentence is tokenized into a bag S and
// the target segmented to maximize the product of p(t | S).
inline PairedEncoding encode_paired(const PairedModel& model, std::string_view target, std::string_view source) {
  PairedEncoding enc;
  enc.source_bag = source_bag(model.source_model, source);
  if (enc.source_bag.empty()) {
    enc.tokens = encode_marginal(model, target);
    enc.fell_back_to_marginal = true;
    return enc;
  }
  const Utf8Text text{std::string(target)};
  const ConditionalScorer prob = model.config.substring_denominator
                                     ? ConditionalScorer(model.table, enc.source_bag, text.str())
                                     : ConditionalScorer(model.table, enc.source_bag);
  enc.tokens = detail::decode_target(model, text, prob);
  return enc;
}

inline std::vector<std::string> tokenize_paired(const PairedModel& model, std::string_view target,
                                                std::string_view source) {
  return token_strings(encode_paired(model, target, source).tokens);
}

// For each target token, the position in `bag` of the source token with the
// highest p(t | s), the denominator restricted to substrings of the joined
// target. Ties go to the lowest position; tokens with no positive score map
// to NULL (nullopt).
inline std::vector<std::optional<size_t>> extract_alignment(const PairedModel& model,
                                                            std::span<const std::string> target_tokens,
                                                            std::span<const TokenId> bag) {
  std::string context;
  for (const auto& t : target_tokens) context += t;
  const CoocTable& table = model.table;
  const std::vector<TokenId> substrings = substring_tokens(table, context);
  std::vector<double> denominators(bag.size(), 0.0);
  for (size_t k = 0; k < bag.size(); ++k) {
    for (TokenId u : substrings) denominators[k] += table.count(u, bag[k]);
  }
  std::vector<std::optional<size_t>> out;
  out.reserve(target_tokens.size());
  for (const auto& piece : target_tokens) {
    const TokenId t = table.target_id(piece);
    std::optional<size_t> best;
    double best_p = 0.0;
    for (size_t k = 0; t >= 0 && k < bag.size(); ++k) {
      if (denominators[k] <= 0.0) continue;
      const double p = table.count(t, bag[k]) / denominators[k];
      if (p > best_p) {
        best_p = p;
        best = k;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace altok
