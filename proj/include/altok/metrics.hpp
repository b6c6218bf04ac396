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

// Intrinsic tokenization metrics and source-side alignment rates.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "altok/error.hpp"
#include "altok/textnorm.hpp"
#include "altok/word_aligner.hpp"

namespace altok {

using TokenizedCorpus = std::vector<std::vector<std::string>>;

struct Metric {
  double value = 0.0;
  size_t count = 0;  // items aggregated
};

struct MetricsReport {
  std::optional<Metric> parity;
  std::optional<Metric> fertility;
  std::optional<Metric> single_char;
  std::optional<Metric> vocab_usage;
  std::optional<Metric> vocab_overlap;
  std::optional<Metric> length_ratio;
  std::optional<Metric> renyi_ratio;
  std::optional<Metric> begin_of_word;
  std::optional<Metric> one_to_one;
  std::optional<Metric> unaligned;

  // Canonical JSON: keys sorted, values with six decimals, absent metrics
  // omitted. Byte-identical for identical inputs.
  std::string to_json() const {
    const std::map<std::string_view, const std::optional<Metric>*> fields = {
        {"begin_of_word", &begin_of_word}, {"fertility", &fertility},     {"length_ratio", &length_ratio},
        {"one_to_one", &one_to_one},       {"parity", &parity},           {"renyi_ratio", &renyi_ratio},
        {"single_char", &single_char},     {"unaligned", &unaligned},     {"vocab_overlap", &vocab_overlap},
        {"vocab_usage", &vocab_usage}};
    std::string out = "{";
    bool first = true;
    for (const auto& [name, metric] : fields) {
      if (!*metric) continue;
      char value[64];
      std::snprintf(value, sizeof value, "%.6f", (*metric)->value);
      if (!first) out += ",";
      first = false;
      out += "\n  \"" + std::string(name) + "\": {\"count\": " + std::to_string((*metric)->count) +
             ", \"value\": " + value + "}";
    }
    out += first ? "}\n" : "\n}\n";
    return out;
  }
};

inline size_t total_tokens(const TokenizedCorpus& corpus) {
  size_t n = 0;
  for (const auto& line : corpus) n += line.size();
  return n;
}

inline std::vector<size_t> token_counts(const TokenizedCorpus& corpus) {
  std::vector<size_t> counts;
  counts.reserve(corpus.size());
  for (const auto& line : corpus) counts.push_back(line.size());
  return counts;
}

// Corpus-level target/source token ratio.
inline double parity(std::span<const size_t> target_counts, std::span<const size_t> source_counts) {
  if (target_counts.size() != source_counts.size()) throw ConfigError("parity needs parallel token counts");
  size_t tgt = 0;
  size_t src = 0;
  for (size_t c : target_counts) tgt += c;
  for (size_t c : source_counts) src += c;
  if (src == 0) throw ConfigError("parity with zero source tokens");
  return static_cast<double>(tgt) / static_cast<double>(src);
}

// Tokens per word.
inline double fertility(const TokenizedCorpus& tokenized, const TokenizedCorpus& words) {
  const size_t n_words = total_tokens(words);
  if (n_words == 0) throw ConfigError("fertility over zero words");
  return static_cast<double>(total_tokens(tokenized)) / static_cast<double>(n_words);
}

struct AlignmentRates {
  double one_to_one = 0.0;
  double unaligned = 0.0;
  size_t source_tokens = 0;
};

// Source-side rates: share of source tokens with exactly one link whose
// target also has exactly one link, and share with no link at all.
inline AlignmentRates alignment_metrics(std::span<const AlignmentLinks> links, std::span<const size_t> source_lengths) {
  if (links.size() != source_lengths.size()) throw ConfigError("alignment metrics need one length per sentence");
  size_t n = 0;
  size_t one = 0;
  size_t none = 0;
  for (size_t k = 0; k < links.size(); ++k) {
    std::unordered_map<uint32_t, size_t> src_deg;
    std::unordered_map<uint32_t, size_t> tgt_deg;
    std::unordered_map<uint32_t, uint32_t> partner;
    for (const Link& l : links[k]) {
      if (l.source >= source_lengths[k]) throw FormatError("link source index out of range");
      ++src_deg[l.source];
      ++tgt_deg[l.target];
      partner[l.source] = l.target;
    }
    for (uint32_t i = 0; i < source_lengths[k]; ++i) {
      auto it = src_deg.find(i);
      if (it == src_deg.end()) {
        ++none;
      } else if (it->second == 1 && tgt_deg[partner[i]] == 1) {
        ++one;
      }
    }
    n += source_lengths[k];
  }
  if (n == 0) return {};
  return {static_cast<double>(one) / static_cast<double>(n), static_cast<double>(none) / static_cast<double>(n), n};
}

// A word marker in front does not count: "▁a" is a single-character token.
inline bool is_single_char_token(std::string_view token) {
  if (token.size() > kMarkerUtf8.size() && token.starts_with(kMarkerUtf8)) token.remove_prefix(kMarkerUtf8.size());
  return is_single_char(token);
}

inline double single_char_rate(const TokenizedCorpus& corpus) {
  const size_t n = total_tokens(corpus);
  if (n == 0) throw ConfigError("single-character rate of an empty corpus");
  size_t single = 0;
  for (const auto& line : corpus) {
    for (const auto& t : line) single += is_single_char_token(t);
  }
  return static_cast<double>(single) / static_cast<double>(n);
}

inline double vocab_usage(const TokenizedCorpus& corpus, std::span<const std::string> vocab) {
  if (vocab.empty()) throw ConfigError("vocabulary usage of an empty vocabulary");
  const std::set<std::string_view> in_vocab(vocab.begin(), vocab.end());
  std::set<std::string_view> used;
  for (const auto& line : corpus) {
    for (const auto& t : line) {
      if (in_vocab.count(t)) used.insert(t);
    }
  }
  return static_cast<double>(used.size()) / static_cast<double>(in_vocab.size());
}

// |A ∩ B| / |A|.
inline double vocab_overlap(std::span<const std::string> a, std::span<const std::string> b) {
  const std::set<std::string_view> sa(a.begin(), a.end());
  const std::set<std::string_view> sb(b.begin(), b.end());
  if (sa.empty()) throw ConfigError("vocabulary overlap of an empty vocabulary");
  size_t shared = 0;
  for (auto s : sa) shared += sb.count(s);
  return static_cast<double>(shared) / static_cast<double>(sa.size());
}

inline double length_ratio(const TokenizedCorpus& ours, const TokenizedCorpus& reference) {
  const size_t ref = total_tokens(reference);
  if (ref == 0) throw ConfigError("length ratio against an empty reference");
  return static_cast<double>(total_tokens(ours)) / static_cast<double>(ref);
}

// Order-alpha Rényi entropy (natural log) of a frequency distribution;
// alpha == 1 is the Shannon limit.
inline double renyi_entropy(std::span<const double> freqs, double alpha) {
  double total = 0.0;
  for (double f : freqs) total += f;
  if (!(total > 0.0)) throw ConfigError("entropy of an empty distribution");
  if (!(alpha >= 0.0)) throw ConfigError("Rényi order must be nonnegative");
  if (alpha == 1.0) {
    double h = 0.0;
    for (double f : freqs) {
      if (f > 0.0) h -= (f / total) * std::log(f / total);
    }
    return h;
  }
  double sum = 0.0;
  for (double f : freqs) {
    if (f > 0.0) sum += std::pow(f / total, alpha);
  }
  return std::log(sum) / (1.0 - alpha);
}

// Rényi entropy of the token distribution over log |V|.
inline double renyi_efficiency(const TokenizedCorpus& corpus, size_t vocab_size, double alpha) {
  if (vocab_size < 2) throw ConfigError("Rényi efficiency needs a vocabulary of at least two tokens");
  std::map<std::string_view, double> freq;
  for (const auto& line : corpus) {
    for (const auto& t : line) freq[t] += 1.0;
  }
  std::vector<double> f;
  f.reserve(freq.size());
  for (const auto& [t, c] : freq) f.push_back(c);
  return renyi_entropy(f, alpha) / std::log(static_cast<double>(vocab_size));
}

inline double begin_of_word_rate(std::span<const std::string> vocab) {
  if (vocab.empty()) throw ConfigError("begin-of-word rate of an empty vocabulary");
  size_t n = 0;
  for (const auto& t : vocab) n += starts_word(t);
  return static_cast<double>(n) / static_cast<double>(vocab.size());
}

// Everything computable from a tokenized corpus, its tokenizer's vocabulary
// and a reference tokenization of the same text.
inline MetricsReport aux_metrics(const TokenizedCorpus& ours, std::span<const std::string> our_vocab,
                                 const TokenizedCorpus& reference, std::span<const std::string> reference_vocab,
                                 double renyi_alpha) {
  if (ours.empty() || total_tokens(ours) == 0) throw ConfigError("metrics over an empty corpus");
  MetricsReport r;
  const size_t n = total_tokens(ours);
  r.single_char = Metric{single_char_rate(ours), n};
  r.vocab_usage = Metric{vocab_usage(ours, our_vocab), our_vocab.size()};
  r.vocab_overlap = Metric{vocab_overlap(our_vocab, reference_vocab), our_vocab.size()};
  r.length_ratio = Metric{length_ratio(ours, reference), n};
  r.renyi_ratio = Metric{renyi_efficiency(ours, our_vocab.size(), renyi_alpha) /
                             renyi_efficiency(reference, reference_vocab.size(), renyi_alpha),
                         n};
  r.begin_of_word = Metric{begin_of_word_rate(our_vocab), our_vocab.size()};
  return r;
}

}  // namespace altok
