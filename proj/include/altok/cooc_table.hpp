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

// Sparse co-occurrence counts c(t, s) between target tokens t and source
// tokens s, and every probability derived from them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "altok/common.hpp"
#include "altok/error.hpp"
#include "altok/utf8.hpp"

namespace altok {

using TokenId = int32_t;

struct CoocEntry {
  TokenId target = 0;
  TokenId source = 0;
  double count = 0.0;
  friend bool operator==(const CoocEntry&, const CoocEntry&) = default;
};

// Immutable compressed-row table. Rows are target tokens, columns source
// tokens; row, column and grand totals are computed once at construction.
class CoocTable {
 public:
  struct Cell {
    TokenId source = 0;
    double count = 0.0;
  };

  CoocTable() = default;

  // Duplicate cells are summed and zero cells dropped.
  CoocTable(std::vector<std::string> target_vocab, std::vector<std::string> source_vocab,
            std::vector<CoocEntry> entries)
      : target_(unique_index(std::move(target_vocab), "target")),
        source_(unique_index(std::move(source_vocab), "source")) {
    std::sort(entries.begin(), entries.end(), [](const CoocEntry& a, const CoocEntry& b) {
      return a.target != b.target ? a.target < b.target : a.source < b.source;
    });
    row_ptr_.assign(target_.size() + 1, 0);
    row_sums_.assign(target_.size(), 0.0);
    col_sums_.assign(source_.size(), 0.0);
    for (size_t k = 0; k < entries.size();) {
      const CoocEntry& e = entries[k];
      if (e.target < 0 || static_cast<size_t>(e.target) >= target_.size() || e.source < 0 ||
          static_cast<size_t>(e.source) >= source_.size()) {
        throw FormatError("co-occurrence cell outside the vocabularies");
      }
      double c = 0.0;
      size_t j = k;
      for (; j < entries.size() && entries[j].target == e.target && entries[j].source == e.source; ++j) {
        if (!(entries[j].count >= 0.0) || !std::isfinite(entries[j].count)) {
          throw FormatError("co-occurrence counts must be finite and nonnegative");
        }
        c += entries[j].count;
      }
      if (c > 0.0) {
        cells_.push_back({e.source, c});
        ++row_ptr_[static_cast<size_t>(e.target) + 1];
        row_sums_[static_cast<size_t>(e.target)] += c;
        col_sums_[static_cast<size_t>(e.source)] += c;
      }
      k = j;
    }
    for (size_t t = 0; t < target_.size(); ++t) row_ptr_[t + 1] += row_ptr_[t];
    for (double r : row_sums_) total_ += r;
    for (const auto& s : target_.strings()) max_target_len_ = std::max(max_target_len_, utf8_length(s));
  }

  const StringIndex& target_vocab() const { return target_; }
  const StringIndex& source_vocab() const { return source_; }
  size_t target_size() const { return target_.size(); }
  size_t source_size() const { return source_.size(); }
  TokenId target_id(std::string_view t) const { return target_.find(t); }
  TokenId source_id(std::string_view s) const { return source_.find(s); }
  const std::string& target(TokenId t) const { return target_[t]; }
  const std::string& source(TokenId s) const { return source_[s]; }
  size_t max_target_len() const { return max_target_len_; }

  std::span<const Cell> row(TokenId t) const {
    const auto b = row_ptr_[static_cast<size_t>(t)];
    const auto e = row_ptr_[static_cast<size_t>(t) + 1];
    return std::span<const Cell>(cells_).subspan(b, e - b);
  }

  double count(TokenId t, TokenId s) const {
    const auto r = row(t);
    auto it = std::lower_bound(r.begin(), r.end(), s, [](const Cell& c, TokenId v) { return c.source < v; });
    return it != r.end() && it->source == s ? it->count : 0.0;
  }

  double row_sum(TokenId t) const { return row_sums_[static_cast<size_t>(t)]; }
  double col_sum(TokenId s) const { return col_sums_[static_cast<size_t>(s)]; }
  double total() const { return total_; }
  size_t nonzero() const { return cells_.size(); }

  // Cells sorted by (target, source).
  std::vector<CoocEntry> entries() const {
    std::vector<CoocEntry> out;
    out.reserve(cells_.size());
    for (size_t t = 0; t < target_.size(); ++t) {
      for (const Cell& c : row(static_cast<TokenId>(t))) out.push_back({static_cast<TokenId>(t), c.source, c.count});
    }
    return out;
  }

  friend bool operator==(const CoocTable& a, const CoocTable& b) {
    return a.target_.strings() == b.target_.strings() && a.source_.strings() == b.source_.strings() &&
           a.entries() == b.entries();
  }

 private:
  static StringIndex unique_index(std::vector<std::string> strings, const char* side) {
    const size_t n = strings.size();
    StringIndex index(std::move(strings));
    if (index.size() != n) throw FormatError(std::string("duplicate ") + side + " token");
    return index;
  }

  StringIndex target_;
  StringIndex source_;
  std::vector<size_t> row_ptr_{0};
  std::vector<Cell> cells_;
  std::vector<double> row_sums_;
  std::vector<double> col_sums_;
  double total_ = 0.0;
  size_t max_target_len_ = 0;
};

// Accumulates counts for a future table.
class CoocBuilder {
 public:
  void add(TokenId t, TokenId s, double c) { counts_[key(t, s)] += c; }

  void merge(const CoocBuilder& other) {
    for (const auto& [k, c] : other.counts_) counts_[k] += c;
  }

  size_t size() const { return counts_.size(); }

  std::vector<CoocEntry> entries() const {
    std::vector<CoocEntry> out;
    out.reserve(counts_.size());
    for (const auto& [k, c] : counts_) {
      out.push_back({static_cast<TokenId>(k >> 32), static_cast<TokenId>(k & 0xffffffffu), c});
    }
    return out;
  }

  CoocTable build(std::vector<std::string> target_vocab, std::vector<std::string> source_vocab) const {
    return CoocTable(std::move(target_vocab), std::move(source_vocab), entries());
  }

 private:
  static uint64_t key(TokenId t, TokenId s) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(t)) << 32) | static_cast<uint32_t>(s);
  }
  std::unordered_map<uint64_t, double> counts_;
};

// Distinct in-vocabulary target tokens occurring as substrings of `context`.
inline std::vector<TokenId> substring_tokens(const CoocTable& table, std::string_view context) {
  const Utf8Text text{std::string(context)};
  std::vector<TokenId> ids;
  for (size_t b = 0; b < text.size(); ++b) {
    for (size_t e = b + 1; e <= std::min(text.size(), b + table.max_target_len()); ++e) {
      const TokenId t = table.target_id(text.span(b, e));
      if (t >= 0) ids.push_back(t);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

// p(t | S) for a fixed bag of source tokens S (duplicates count):
//   sum_{s in S} c(t, s) / sum_{t' in D} sum_{s in S} c(t', s)
// where D is the whole target vocabulary, or only the tokens that are
// substrings of a given target string when a context is supplied.
class ConditionalScorer {
 public:
  ConditionalScorer(const CoocTable& table, std::span<const TokenId> bag,
                    std::optional<std::string_view> context = std::nullopt)
      : table_(&table), bag_(bag.begin(), bag.end()) {
    if (bag_.empty()) throw std::invalid_argument("conditional probability needs a non-empty source bag");
    if (context) {
      for (TokenId t : substring_tokens(table, *context)) denominator_ += numerator(t);
    } else {
      for (TokenId s : bag_) denominator_ += table.col_sum(s);
    }
  }

  double numerator(TokenId t) const {
    if (t < 0) return 0.0;
    double num = 0.0;
    for (TokenId s : bag_) num += table_->count(t, s);
    return num;
  }

  double denominator() const { return denominator_; }

  double operator()(TokenId t) const {
    if (denominator_ <= 0.0) return 0.0;
    return numerator(t) / denominator_;
  }

 private:
  const CoocTable* table_;
  std::vector<TokenId> bag_;
  double denominator_ = 0.0;
};

inline double cond_prob(const CoocTable& table, std::string_view t, std::span<const TokenId> bag) {
  return ConditionalScorer(table, bag)(table.target_id(t));
}

inline double marginal_prob(const CoocTable& table, TokenId t) {
  if (!(table.total() > 0.0)) throw std::invalid_argument("marginal probability of an empty table");
  return t < 0 ? 0.0 : table.row_sum(t) / table.total();
}

inline double marginal_prob(const CoocTable& table, std::string_view t) {
  return marginal_prob(table, table.target_id(t));
}

// p(t | s) = c(t, s) / sum_{t'} c(t', s), optionally with t' restricted to
// substrings of `context`.
inline double align_prob(const CoocTable& table, TokenId t, TokenId s,
                         std::optional<std::string_view> context = std::nullopt) {
  if (s < 0 || static_cast<size_t>(s) >= table.source_size()) {
    throw std::invalid_argument("source token outside the vocabulary");
  }
  if (t < 0) return 0.0;
  double denom = 0.0;
  if (context) {
    for (TokenId u : substring_tokens(table, *context)) denom += table.count(u, s);
  } else {
    denom = table.col_sum(s);
  }
  return denom > 0.0 ? table.count(t, s) / denom : 0.0;
}

inline double align_prob(const CoocTable& table, std::string_view t, std::string_view s,
                         std::optional<std::string_view> context = std::nullopt) {
  return align_prob(table, table.target_id(t), table.source_id(s), context);
}

// I(t; V_src) = sum_s p(t,s) log(p(t,s) / (p(t) p(s))), zero cells skipped.
inline double mutual_information(const CoocTable& table, TokenId t) {
  const double n = table.total();
  const double row = table.row_sum(t);
  if (!(n > 0.0) || !(row > 0.0)) return 0.0;
  double mi = 0.0;
  for (const auto& cell : table.row(t)) {
    mi += (cell.count / n) * std::log(cell.count * n / (row * table.col_sum(cell.source)));
  }
  return mi;
}

inline double mutual_information(const CoocTable& table, std::string_view t) {
  const TokenId id = table.target_id(t);
  return id < 0 ? 0.0 : mutual_information(table, id);
}

}  // namespace altok
