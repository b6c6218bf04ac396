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

// Text normalization shared by every tokenizer: NFKC, whitespace collapsed
// into the word-boundary marker U+2581, and a marker in front of every
// punctuation character.

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "altok/error.hpp"
#include "altok/utf8.hpp"

namespace altok {

inline constexpr char32_t kMarker = U'▁';
inline constexpr std::string_view kMarkerUtf8 = "\xE2\x96\x81";

inline bool is_punctuation(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

inline bool is_space(char32_t c) {
  return c == kMarker || u_isUWhiteSpace(static_cast<UChar32>(c)) || c == U'\t' ||
         c == U'\n' || c == U'\r';
}

inline std::u32string nfkc(std::string_view raw) {
  std::u32string cps = decode_utf8(raw);  // validates before ICU sees it
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status)) throw Error(std::string("NFKC unavailable: ") + u_errorName(status));
  const icu::UnicodeString in =
      icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  icu::UnicodeString out;
  norm->normalize(in, out, status);
  if (U_FAILURE(status)) throw Error(std::string("NFKC failed: ") + u_errorName(status));
  std::u32string result;
  result.reserve(static_cast<size_t>(out.length()));
  for (int32_t i = 0; i < out.length(); i = out.moveIndex32(i, 1)) {
    result.push_back(static_cast<char32_t>(out.char32At(i)));
  }
  return result;
}

// Normalized form of `raw`. The result always starts with the marker, has
// no whitespace, and never contains two markers in a row or a trailing one.
inline std::string normalize(std::string_view raw) {
  const std::u32string cps = nfkc(raw);
  std::u32string out;
  out.reserve(cps.size() + 8);
  out.push_back(kMarker);
  bool pending = false;
  for (char32_t c : cps) {
    if (is_space(c)) {
      pending = true;
      continue;
    }
    if ((pending || is_punctuation(c)) && out.back() != kMarker) out.push_back(kMarker);
    pending = false;
    out.push_back(c);
  }
  return encode_utf8(out);
}

// Splits normalized text into words, each starting with the marker.
// The marker-only text of an empty sentence yields no words.
inline std::vector<std::string> pretokenize(std::string_view text) {
  std::vector<std::string> words;
  if (text == kMarkerUtf8) return words;
  size_t start = 0;
  while (start < text.size()) {
    size_t next = text.find(kMarkerUtf8, start + 1);
    if (next == std::string_view::npos) next = text.size();
    words.emplace_back(text.substr(start, next - start));
    start = next;
  }
  return words;
}

// Concatenates tokens, maps markers to spaces and drops the leading space.
inline std::string detokenize(std::span<const std::string> tokens) {
  std::string joined;
  for (const auto& t : tokens) joined += t;
  std::string out;
  out.reserve(joined.size());
  size_t pos = 0;
  while (pos < joined.size()) {
    if (joined.compare(pos, kMarkerUtf8.size(), kMarkerUtf8) == 0) {
      out.push_back(' ');
      pos += kMarkerUtf8.size();
    } else {
      out.push_back(joined[pos++]);
    }
  }
  if (!out.empty() && out.front() == ' ') out.erase(0, 1);
  return out;
}

// The text detokenize() recovers from any tokenization of `normalized`.
inline std::string markers_to_spaces(std::string_view normalized) {
  const std::string s(normalized);
  return detokenize(std::span<const std::string>(&s, 1));
}

inline bool is_single_char(std::string_view token) { return utf8_length(token) == 1; }

inline bool starts_word(std::string_view token) { return token.starts_with(kMarkerUtf8); }

}  // namespace altok
