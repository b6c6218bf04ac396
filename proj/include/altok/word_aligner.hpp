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

// IBM Model 1 word aligner. Produces the word links that turn parallel
// sentences into aligned word-pair training examples, and reads/writes the
// Pharaoh "i-j" link format so externally produced alignments can be used
// instead.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "altok/common.hpp"
#include "altok/error.hpp"

namespace altok {

struct SentencePair {
  std::vector<std::string> source;
  std::vector<std::string> target;
};

struct Link {
  uint32_t source = 0;
  uint32_t target = 0;
  friend auto operator<=>(const Link&, const Link&) = default;
};

// Links of one sentence pair, sorted by (source, target) without duplicates.
class AlignmentLinks {
 public:
  AlignmentLinks() = default;
  AlignmentLinks(std::initializer_list<Link> links) : AlignmentLinks(std::vector<Link>(links)) {}
  explicit AlignmentLinks(std::vector<Link> links) : links_(std::move(links)) {
    std::sort(links_.begin(), links_.end());
    links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
  }

  const std::vector<Link>& links() const { return links_; }
  size_t size() const { return links_.size(); }
  bool empty() const { return links_.empty(); }
  auto begin() const { return links_.begin(); }
  auto end() const { return links_.end(); }

  // Throws FormatError when an index is outside the sentence.
  void validate(size_t source_len, size_t target_len) const {
    for (const Link& l : links_) {
      if (l.source >= source_len || l.target >= target_len) {
        throw FormatError("link " + std::to_string(l.source) + "-" + std::to_string(l.target) +
                          " outside sentence of lengths " + std::to_string(source_len) + "/" +
                          std::to_string(target_len));
      }
    }
  }

  friend bool operator==(const AlignmentLinks&, const AlignmentLinks&) = default;

 private:
  std::vector<Link> links_;
};

inline std::string format_pharaoh(const AlignmentLinks& links) {
  std::string out;
  for (const Link& l : links) {
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(l.source);
    out.push_back('-');
    out += std::to_string(l.target);
  }
  return out;
}

inline AlignmentLinks parse_pharaoh(std::string_view line) {
  std::vector<Link> links;
  size_t pos = 0;
  auto parse_index = [&](std::string_view field) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
      throw FormatError("bad Pharaoh link '" + std::string(line) + "'");
    }
    return v;
  };
  while (pos < line.size()) {
    if (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r') {
      ++pos;
      continue;
    }
    size_t end = line.find_first_of(" \t\r", pos);
    if (end == std::string_view::npos) end = line.size();
    const std::string_view item = line.substr(pos, end - pos);
    const size_t dash = item.find('-');
    if (dash == std::string_view::npos) throw FormatError("bad Pharaoh link '" + std::string(item) + "'");
    links.push_back({parse_index(item.substr(0, dash)), parse_index(item.substr(dash + 1))});
    pos = end;
  }
  return AlignmentLinks(std::move(links));
}

// Lexical translation probabilities t(target | source) with a NULL source
// word at id 0.
class TranslationTable {
 public:
  static constexpr int32_t kNullId = 0;
  static constexpr std::string_view kNullWord = "<null>";

  TranslationTable() { source_.add(std::string(kNullWord)); }

  const StringIndex& source_vocab() const { return source_; }
  const StringIndex& target_vocab() const { return target_; }

  double prob(int32_t source, int32_t target) const {
    auto it = probs_.find(key(source, target));
    return it == probs_.end() ? 0.0 : it->second;
  }

  // t(target | source) by word; unknown words have probability 0.
  double prob(std::string_view source, std::string_view target) const {
    const int32_t s = source_.find(source);
    const int32_t t = target_.find(target);
    return s < 0 || t < 0 ? 0.0 : prob(s, t);
  }
  double null_prob(std::string_view target) const {
    const int32_t t = target_.find(target);
    return t < 0 ? 0.0 : prob(kNullId, t);
  }

  // Sum of t(. | source) over all target words.
  double row_sum(int32_t source) const {
    double sum = 0.0;
    for (const auto& [k, p] : probs_) {
      if (static_cast<int32_t>(k >> 32) == source) sum += p;
    }
    return sum;
  }

  size_t num_entries() const { return probs_.size(); }

  // Log-likelihood per-iteration history recorded by train_ibm1.
  const std::vector<double>& log_likelihoods() const { return log_likelihoods_; }

 private:
  friend struct Ibm1Trainer;
  static uint64_t key(int32_t s, int32_t t) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(s)) << 32) | static_cast<uint32_t>(t);
  }

  StringIndex source_;
  StringIndex target_;
  std::unordered_map<uint64_t, double> probs_;
  std::vector<double> log_likelihoods_;
};

struct Ibm1Config {
  size_t iterations = 5;
  unsigned threads = 1;
  bool deterministic = true;
};

struct Ibm1Trainer {
  static TranslationTable train(std::span<const SentencePair> corpus, const Ibm1Config& config) {
    if (corpus.empty()) throw ConfigError("alignment corpus is empty");
    if (config.iterations == 0) throw ConfigError("IBM model 1 needs at least one iteration");
    TranslationTable table;
    struct Encoded {
      std::vector<int32_t> source;  // NULL first
      std::vector<int32_t> target;
    };
    std::vector<Encoded> sentences;
    sentences.reserve(corpus.size());
    for (const auto& pair : corpus) {
      if (pair.source.empty() && pair.target.empty()) {
        throw ConfigError("sentence pair with both sides empty");
      }
      Encoded enc;
      enc.source.push_back(TranslationTable::kNullId);
      for (const auto& w : pair.source) enc.source.push_back(table.source_.add(w));
      for (const auto& w : pair.target) enc.target.push_back(table.target_.add(w));
      sentences.push_back(std::move(enc));
    }

    // Uniform start over the target words each source word co-occurs with.
    {
      std::unordered_map<uint64_t, double> cooc;
      std::vector<double> fanout(table.source_.size(), 0.0);
      for (const auto& s : sentences) {
        for (int32_t e : s.source) {
          for (int32_t f : s.target) {
            if (cooc.emplace(TranslationTable::key(e, f), 0.0).second) fanout[static_cast<size_t>(e)] += 1.0;
          }
        }
      }
      for (auto& [k, p] : cooc) p = 1.0 / fanout[static_cast<size_t>(k >> 32)];
      table.probs_ = std::move(cooc);
    }

    const unsigned threads = resolve_threads(config.threads);
    const size_t chunks = reduction_chunks(config.deterministic, threads);
    struct Partial {
      std::unordered_map<uint64_t, double> counts;
      double log_likelihood = 0.0;
    };
    for (size_t iter = 0; iter < config.iterations; ++iter) {
      auto partials = map_chunks<Partial>(sentences.size(), chunks, threads, [&](size_t b, size_t e, Partial& out) {
        std::vector<double> probs;
        for (size_t i = b; i < e; ++i) {
          const auto& s = sentences[i];
          const double uniform = 1.0 / static_cast<double>(s.source.size());
          for (int32_t f : s.target) {
            probs.clear();
            double denom = 0.0;
            for (int32_t src : s.source) {
              probs.push_back(table.prob(src, f));
              denom += probs.back();
            }
            out.log_likelihood += std::log(denom * uniform);
            for (size_t k = 0; k < s.source.size(); ++k) {
              out.counts[TranslationTable::key(s.source[k], f)] += probs[k] / denom;
            }
          }
        }
      });
      std::unordered_map<uint64_t, double> counts;
      double ll = 0.0;
      for (auto& p : partials) {
        for (const auto& [k, c] : p.counts) counts[k] += c;
        ll += p.log_likelihood;
      }
      table.log_likelihoods_.push_back(ll);
      std::vector<double> totals(table.source_.size(), 0.0);
      for (const auto& [k, c] : counts) totals[static_cast<size_t>(k >> 32)] += c;
      for (auto& [k, c] : counts) c /= totals[static_cast<size_t>(k >> 32)];
      table.probs_ = std::move(counts);
    }
    return table;
  }
};

inline TranslationTable train_ibm1(std::span<const SentencePair> corpus, const Ibm1Config& config = {}) {
  return Ibm1Trainer::train(corpus, config);
}

// Corpus log-likelihood under IBM model 1 with a uniform alignment prior.
inline double ibm1_log_likelihood(const TranslationTable& table, std::span<const SentencePair> corpus) {
  double ll = 0.0;
  for (const auto& pair : corpus) {
    const double uniform = 1.0 / static_cast<double>(pair.source.size() + 1);
    for (const auto& f : pair.target) {
      double p = table.null_prob(f);
      for (const auto& e : pair.source) p += table.prob(e, f);
      ll += std::log(p * uniform);
    }
  }
  return ll;
}

// Probability given to words the table has never seen.
inline constexpr double kOovFloor = 1e-12;

// Links every target word to its most probable source word. Source words
// are scanned left to right and win ties; NULL wins only when strictly more
// probable, and links to NULL are omitted.
inline AlignmentLinks align_sentence(const TranslationTable& table, std::span<const std::string> source,
                                     std::span<const std::string> target) {
  std::vector<Link> links;
  for (size_t j = 0; j < target.size(); ++j) {
    double best = -1.0;
    size_t best_i = 0;
    for (size_t i = 0; i < source.size(); ++i) {
      const double p = std::max(table.prob(source[i], target[j]), kOovFloor);
      if (p > best) {
        best = p;
        best_i = i;
      }
    }
    const double null_p = std::max(table.null_prob(target[j]), kOovFloor);
    if (source.empty() || null_p > best) continue;
    links.push_back({static_cast<uint32_t>(best_i), static_cast<uint32_t>(j)});
  }
  return AlignmentLinks(std::move(links));
}

// One aligned word pair; an empty `source` stands for the NULL word.
struct WordPair {
  std::optional<std::string> source;
  std::string target;
  friend bool operator==(const WordPair&, const WordPair&) = default;
};

// One example per link, plus a NULL-sourced example for every target word
// the links leave uncovered.
inline std::vector<WordPair> extract_word_pairs(const AlignmentLinks& links, std::span<const std::string> source,
                                                std::span<const std::string> target) {
  links.validate(source.size(), target.size());
  std::vector<WordPair> out;
  std::vector<bool> covered(target.size(), false);
  for (const Link& l : links) {
    out.push_back({source[l.source], target[l.target]});
    covered[l.target] = true;
  }
  for (size_t j = 0; j < target.size(); ++j) {
    if (!covered[j]) out.push_back({std::nullopt, target[j]});
  }
  return out;
}

}  // namespace altok
