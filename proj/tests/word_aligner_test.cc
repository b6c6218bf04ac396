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

#include "altok/word_aligner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "altok/textnorm.hpp"
#include "cipher.hpp"

namespace altok {
namespace {

std::vector<SentencePair> letter_cipher_corpus(const testing::Cipher& cipher) {
  std::vector<SentencePair> corpus;
  for (char c = 'a'; c <= 'z'; ++c) corpus.push_back({{std::string(1, c)}, {std::string(1, cipher.encipher(c))}});
  return corpus;
}

std::vector<SentencePair> word_corpus(const testing::CipherCorpus& c, size_t n) {
  std::vector<SentencePair> out;
  for (size_t i = 0; i < n; ++i) out.push_back({pretokenize(normalize(c.source[i])), pretokenize(normalize(c.target[i]))});
  return out;
}

TEST(Ibm1Test, SinglePair) {
  const std::vector<SentencePair> corpus = {{{"x"}, {"y"}}};
  const auto table = train_ibm1(corpus, {.iterations = 1});
  EXPECT_DOUBLE_EQ(table.prob("x", "y"), 1.0);
}

TEST(Ibm1Test, RecoversLetterPermutation) {
  const testing::Cipher cipher(17);
  const auto table = train_ibm1(letter_cipher_corpus(cipher), {.iterations = 10});
  for (char c = 'a'; c <= 'z'; ++c) {
    std::string best;
    double best_p = -1.0;
    for (char d = 'a'; d <= 'z'; ++d) {
      const double p = table.prob(std::string(1, c), std::string(1, d));
      if (p > best_p) {
        best_p = p;
        best = std::string(1, d);
      }
    }
    EXPECT_EQ(best, std::string(1, cipher.encipher(c)));
  }
}

TEST(Ibm1Test, CooccurrenceWins) {
  const std::vector<SentencePair> corpus = {{{"x"}, {"y"}}, {{"x", "z"}, {"y", "w"}}};
  const auto table = train_ibm1(corpus, {.iterations = 5});
  EXPECT_GT(table.prob("x", "y"), table.prob("x", "w"));
}

TEST(Ibm1Test, LikelihoodNeverDecreasesAndRowsNormalize) {
  const auto corpus = word_corpus(testing::make_cipher_corpus(300), 300);
  const auto table = train_ibm1(corpus, {.iterations = 8});
  const auto& ll = table.log_likelihoods();
  ASSERT_EQ(ll.size(), 8u);
  for (size_t k = 1; k < ll.size(); ++k) EXPECT_GE(ll[k], ll[k - 1] - 1e-9 * std::abs(ll[k - 1]));
  EXPECT_GE(ibm1_log_likelihood(table, corpus), ll.back() - 1e-9 * std::abs(ll.back()));
  for (size_t s = 0; s < table.source_vocab().size(); ++s) {
    EXPECT_NEAR(table.row_sum(static_cast<int32_t>(s)), 1.0, 1e-9);
  }
}

TEST(Ibm1Test, DeterministicAcrossThreadCounts) {
  const auto corpus = word_corpus(testing::make_cipher_corpus(200), 200);
  const auto a = train_ibm1(corpus, {.iterations = 4, .threads = 1});
  const auto b = train_ibm1(corpus, {.iterations = 4, .threads = 3});
  EXPECT_EQ(a.log_likelihoods(), b.log_likelihoods());
  for (const auto& e : a.source_vocab().strings()) {
    for (const auto& f : a.target_vocab().strings()) EXPECT_EQ(a.prob(e, f), b.prob(e, f));
  }
}

TEST(Ibm1Test, EmptyCorpusIsAConfigError) {
  EXPECT_THROW(train_ibm1(std::vector<SentencePair>{}), ConfigError);
}

TEST(AlignSentenceTest, Diagonal) {
  const std::vector<SentencePair> corpus = {{{"a"}, {"a"}}, {{"b"}, {"b"}}, {{"a", "b"}, {"a", "b"}}};
  const auto table = train_ibm1(corpus, {.iterations = 5});
  const std::vector<std::string> s = {"a", "b"};
  EXPECT_EQ(align_sentence(table, s, s), (AlignmentLinks{{0, 0}, {1, 1}}));
}

TEST(AlignSentenceTest, NullBestGivesNoLink) {
  const std::vector<SentencePair> corpus = {{{}, {"q"}}, {{"x"}, {"y"}}};
  const auto table = train_ibm1(corpus, {.iterations = 3});
  const std::vector<std::string> src = {"x"};
  const std::vector<std::string> tgt = {"q", "y"};
  EXPECT_EQ(align_sentence(table, src, tgt), (AlignmentLinks{{0, 1}}));
}

TEST(AlignSentenceTest, CipherSentence) {
  const testing::Cipher cipher(17);
  const auto table = train_ibm1(letter_cipher_corpus(cipher), {.iterations = 10});
  const std::vector<std::string> src = {"h", "e", "l", "p", "s"};
  std::vector<std::string> tgt;
  for (const auto& w : src) tgt.push_back(cipher.encipher(w));
  std::swap(tgt[0], tgt[4]);
  EXPECT_EQ(align_sentence(table, src, tgt), (AlignmentLinks{{0, 4}, {1, 1}, {2, 2}, {3, 3}, {4, 0}}));
}

TEST(ExtractWordPairsTest, OneExamplePerLinkPlusNull) {
  const std::vector<std::string> x = {"▁x"};
  const std::vector<std::string> y = {"▁y"};
  EXPECT_EQ(extract_word_pairs(AlignmentLinks{{0, 0}}, x, y), (std::vector<WordPair>{{"▁x", "▁y"}}));
  EXPECT_EQ(extract_word_pairs(AlignmentLinks{}, x, y), (std::vector<WordPair>{{std::nullopt, "▁y"}}));
  const std::vector<std::string> y2 = {"▁y", "▁z"};
  EXPECT_EQ(extract_word_pairs(AlignmentLinks{{0, 0}, {0, 1}}, x, y2),
            (std::vector<WordPair>{{"▁x", "▁y"}, {"▁x", "▁z"}}));
  EXPECT_THROW(extract_word_pairs(AlignmentLinks{{1, 0}}, x, y), FormatError);
}

TEST(PharaohTest, FormatAndParse) {
  const AlignmentLinks links{{1, 2}, {0, 0}, {0, 1}};
  EXPECT_EQ(format_pharaoh(links), "0-0 0-1 1-2");
  EXPECT_EQ(parse_pharaoh("0-0 0-1 1-2"), links);
  EXPECT_EQ(format_pharaoh(parse_pharaoh("0-0 0-1 1-2")), "0-0 0-1 1-2");
  EXPECT_TRUE(parse_pharaoh("").empty());
  EXPECT_EQ(format_pharaoh(AlignmentLinks{}), "");
  EXPECT_THROW(parse_pharaoh("0-"), FormatError);
  EXPECT_THROW(parse_pharaoh("a-1"), FormatError);
  EXPECT_THROW(parse_pharaoh("01"), FormatError);
  EXPECT_THROW(parse_pharaoh("-1-2"), FormatError);
}

}  // namespace
}  // namespace altok
