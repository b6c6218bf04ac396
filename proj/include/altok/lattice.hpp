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

// Segmentation lattice over a code point string. Every candidate piece
// text[begin:end) the scorer accepts becomes a node carrying its log
// probability; the lattice then answers best-path and marginal queries.
//
// All arithmetic is in the log domain, so strings of any length with tiny
// per-piece probabilities neither underflow nor lose the total marginal.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altok/error.hpp"
#include "altok/utf8.hpp"

namespace altok {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Relative gap below which two path scores count as tied.
inline constexpr double kTieMargin = 1e-12;
inline constexpr size_t kDefaultMaxPieceLen = 16;

// What a scorer reports for an accepted span: the vocabulary id of the piece
// and its log probability.
struct Arc {
  int32_t id = -1;
  double log_prob = kNegInf;
};

struct LatticeNode {
  size_t begin = 0;
  size_t end = 0;
  int32_t id = -1;
  double log_prob = kNegInf;
};

struct Span {
  size_t begin = 0;
  size_t end = 0;
  int32_t id = -1;
  friend bool operator==(const Span&, const Span&) = default;
};

inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

// Prefix (alpha) and suffix (beta) marginals of a lattice, in log space.
// alpha[i] sums the probability of every segmentation of text[0:i), beta[i]
// of text[i:n).
struct Marginals {
  std::vector<double> log_alpha;
  std::vector<double> log_beta;

  double alpha(size_t i) const { return std::exp(log_alpha[i]); }
  double beta(size_t i) const { return std::exp(log_beta[i]); }
  double log_total() const { return log_alpha.back(); }
};

class Lattice {
 public:
  // `scorer(begin, end)` returns std::optional<Arc>; spans it rejects are not
  // pieces. Only spans of at most `max_piece_len` code points are offered.
  template <class Scorer>
  Lattice(const Utf8Text& text, Scorer&& scorer, size_t max_piece_len = kDefaultMaxPieceLen)
      : text_(&text), end_index_(text.size() + 2, 0) {
    const size_t n = text.size();
    for (size_t end = 1; end <= n; ++end) {
      end_index_[end] = nodes_.size();
      const size_t first = end > max_piece_len ? end - max_piece_len : 0;
      // Longest piece first: the best-path scan keeps the first of equal
      // scores, so ties go to the longer incoming piece.
      for (size_t begin = first; begin < end; ++begin) {
        std::optional<Arc> arc = scorer(begin, end);
        if (arc && arc->log_prob != kNegInf) nodes_.push_back({begin, end, arc->id, arc->log_prob});
      }
    }
    end_index_[n + 1] = nodes_.size();
  }

  size_t size() const { return text_->size(); }
  const std::vector<LatticeNode>& nodes() const { return nodes_; }

  // Best segmentation by total log probability.
  std::vector<Span> viterbi() {
    const size_t n = size();
    best_.assign(n + 1, kNegInf);
    sizes_.assign(n + 1, 0);
    ids_.assign(n + 1, -1);
    best_[0] = 0.0;
    for (size_t end = 1; end <= n; ++end) {
      for (size_t k = end_index_[end]; k < end_index_[end + 1]; ++k) {
        const LatticeNode& node = nodes_[k];
        if (best_[node.begin] == kNegInf) continue;
        const double score = best_[node.begin] + node.log_prob;
        // Longer pieces come first at each end, so a shorter one has to win
        // by more than rounding noise; reordered sums of the same pieces tie.
        if (best_[end] == kNegInf || score > best_[end] + kTieMargin * std::max(1.0, std::abs(best_[end]))) {
          best_[end] = score;
          sizes_[end] = end - node.begin;
          ids_[end] = node.id;
        }
      }
    }
    if (n > 0 && best_[n] == kNegInf) throw_unreachable();
    std::vector<Span> path;
    for (size_t i = n; i > 0; i -= sizes_[i]) path.push_back({i - sizes_[i], i, ids_[i]});
    std::reverse(path.begin(), path.end());
    return path;
  }

  Marginals forward_backward() const {
    const size_t n = size();
    Marginals m;
    m.log_alpha.assign(n + 1, kNegInf);
    m.log_beta.assign(n + 1, kNegInf);
    m.log_alpha[0] = 0.0;
    for (const LatticeNode& node : nodes_) {
      m.log_alpha[node.end] = log_add(m.log_alpha[node.end], m.log_alpha[node.begin] + node.log_prob);
    }
    m.log_beta[n] = 0.0;
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
      m.log_beta[it->begin] = log_add(m.log_beta[it->begin], it->log_prob + m.log_beta[it->end]);
    }
    if (n > 0 && m.log_alpha[n] == kNegInf) throw_unreachable();
    return m;
  }

  // Scores of the last viterbi() call: best log score and incoming piece
  // length per position.
  const std::vector<double>& best() const { return best_; }
  const std::vector<size_t>& sizes() const { return sizes_; }

 private:
  [[noreturn]] void throw_unreachable() const {
    // Find the first character no piece can cover.
    std::vector<bool> reach(size() + 1, false);
    reach[0] = true;
    for (const LatticeNode& node : nodes_) {
      if (reach[node.begin]) reach[node.end] = true;
    }
    size_t i = 1;
    while (i <= size() && reach[i]) ++i;
    throw TokenizeError("no piece covers character '" + std::string(text_->at(i - 1)) +
                        "' at position " + std::to_string(i - 1));
  }

  const Utf8Text* text_;
  std::vector<LatticeNode> nodes_;  // sorted by end, then by begin
  std::vector<size_t> end_index_;
  std::vector<double> best_;
  std::vector<size_t> sizes_;
  std::vector<int32_t> ids_;
};

template <class Scorer>
std::vector<Span> viterbi(const Utf8Text& text, Scorer&& scorer, size_t max_piece_len = kDefaultMaxPieceLen) {
  Lattice lattice(text, std::forward<Scorer>(scorer), max_piece_len);
  return lattice.viterbi();
}

template <class Scorer>
Marginals forward_backward(const Utf8Text& text, Scorer&& scorer,
                           size_t max_piece_len = kDefaultMaxPieceLen) {
  return Lattice(text, std::forward<Scorer>(scorer), max_piece_len).forward_backward();
}

inline std::vector<std::string> span_strings(const Utf8Text& text, const std::vector<Span>& spans) {
  std::vector<std::string> out;
  out.reserve(spans.size());
  for (const Span& s : spans) out.emplace_back(text.span(s.begin, s.end));
  return out;
}

}  // namespace altok
