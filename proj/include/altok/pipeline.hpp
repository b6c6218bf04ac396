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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "altok/corpus.hpp"
#include "altok/error.hpp"
#include "altok/paired_model.hpp"
#include "altok/paired_trainer.hpp"
#include "altok/textnorm.hpp"
#include "altok/unigram.hpp"
#include "altok/word_aligner.hpp"

namespace altok {

// Normalized sentences of a parallel corpus and their words.
struct NormalizedCorpus {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::vector<std::vector<std::string>> source_words;
  std::vector<std::vector<std::string>> target_words;
  size_t size() const { return source.size(); }
};

inline NormalizedCorpus normalize_corpus(const ParallelText& text) {
  if (text.source.size() != text.target.size()) throw LineCountMismatch(text.source.size(), text.target.size());
  NormalizedCorpus out;
  for (size_t i = 0; i < text.size(); ++i) {
    out.source.push_back(normalize(text.source[i]));
    out.target.push_back(normalize(text.target[i]));
    out.source_words.push_back(pretokenize(out.source.back()));
    out.target_words.push_back(pretokenize(out.target.back()));
  }
  return out;
}

inline std::vector<AlignmentLinks> read_pharaoh_file(const std::string& path) {
  std::vector<AlignmentLinks> out;
  size_t n = 0;
  for (const auto& line : read_lines(path)) {
    ++n;
    try {
      out.push_back(parse_pharaoh(line));
    } catch (const FormatError& e) {
      throw FormatError(path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

// Word alignments from a built-in IBM Model 1 run over the corpus words.
inline std::vector<AlignmentLinks> align_words(const NormalizedCorpus& corpus, const Ibm1Config& config,
                                               TranslationTable* table_out = nullptr) {
  std::vector<SentencePair> pairs;
  pairs.reserve(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) pairs.push_back({corpus.source_words[i], corpus.target_words[i]});
  TranslationTable table = train_ibm1(pairs, config);
  std::vector<AlignmentLinks> links;
  links.reserve(pairs.size());
  for (const auto& p : pairs) links.push_back(align_sentence(table, p.source, p.target));
  if (table_out) *table_out = std::move(table);
  return links;
}

struct PipelineOptions {
  TrainConfig train;
  // Used when no source model is supplied.
  size_t source_vocab_size = 8000;
  std::optional<UnigramModel> source_model;
  // Word links, one entry per sentence pair. Computed with IBM Model 1 when absent.
  std::optional<std::vector<AlignmentLinks>> links;
  size_t ibm_iterations = 5;
  std::function<void(const UnigramEmStats&)> on_source_step;
};

inline UnigramModel train_source_model(const NormalizedCorpus& corpus, const PipelineOptions& options) {
  UnigramTrainerConfig uc;
  uc.vocab_size = options.source_vocab_size;
  uc.max_piece_len = options.train.max_piece_len;
  uc.shrink_factor = options.train.shrink_factor;
  uc.threads = options.train.threads;
  uc.deterministic = options.train.deterministic_reduction;
  uc.on_em_step = options.on_source_step;
  return train_unigram(corpus.source, uc);
}

// Word pairs of the whole corpus, one per link plus NULL-sourced examples
// for unaligned target words.
inline std::vector<WordPair> corpus_word_pairs(const NormalizedCorpus& corpus,
                                               std::span<const AlignmentLinks> links) {
  if (links.size() != corpus.size()) throw LineCountMismatch(corpus.size(), links.size());
  std::vector<WordPair> pairs;
  for (size_t i = 0; i < corpus.size(); ++i) {
    try {
      auto p = extract_word_pairs(links[i], corpus.source_words[i], corpus.target_words[i]);
      pairs.insert(pairs.end(), p.begin(), p.end());
    } catch (const FormatError& e) {
      throw FormatError("alignment line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return pairs;
}

// normalize -> pretokenize -> source model -> word alignment -> word pairs
// -> paired training.
inline PairedModel train_pipeline(const ParallelText& text, const PipelineOptions& options,
                                  const TrainObserver& observer = {}) {
  options.train.validate();
  const NormalizedCorpus corpus = normalize_corpus(text);
  const UnigramModel source_model = options.source_model ? *options.source_model : train_source_model(corpus, options);
  std::vector<AlignmentLinks> links;
  if (options.links) {
    links = *options.links;
  } else {
    Ibm1Config ic;
    ic.iterations = options.ibm_iterations;
    ic.threads = options.train.threads;
    ic.deterministic = options.train.deterministic_reduction;
    links = align_words(corpus, ic);
  }
  const auto pairs = corpus_word_pairs(corpus, links);
  const auto examples = make_examples(pairs, source_model);
  return train_paired(examples, source_model, options.train, observer);
}

}  // namespace altok
