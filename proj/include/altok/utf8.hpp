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

#include <unicode/utf8.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "altok/error.hpp"

namespace altok {

// Appends the UTF-8 encoding of `cp` to `out`.
inline void append_utf8(std::string& out, char32_t cp) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) throw DecodeError("cannot encode code point " + std::to_string(static_cast<uint32_t>(cp)));
  out.append(buf, static_cast<size_t>(len));
}

// Decodes `s` into code points. Throws DecodeError on any ill-formed
// sequence; nothing is ever replaced with U+FFFD.
inline std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto n = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < n) {
    const int32_t at = i;
    UChar32 c = 0;
    U8_NEXT(p, i, n, c);
    if (c < 0) throw DecodeError("invalid UTF-8 sequence at byte " + std::to_string(at));
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

inline std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) append_utf8(out, c);
  return out;
}

inline bool is_valid_utf8(std::string_view s) {
  try {
    decode_utf8(s);
    return true;
  } catch (const DecodeError&) {
    return false;
  }
}

// Number of code points in a valid UTF-8 string.
inline size_t utf8_length(std::string_view s) {
  size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

// Validated UTF-8 text with random access by code point index. Spans are
// half-open code point ranges and come back as byte views into the text.
class Utf8Text {
 public:
  Utf8Text() : offsets_{0} {}

  explicit Utf8Text(std::string text) : text_(std::move(text)) {
    const auto* p = reinterpret_cast<const uint8_t*>(text_.data());
    const auto n = static_cast<int32_t>(text_.size());
    offsets_.reserve(text_.size() + 1);
    int32_t i = 0;
    while (i < n) {
      offsets_.push_back(static_cast<size_t>(i));
      const int32_t at = i;
      UChar32 c = 0;
      U8_NEXT(p, i, n, c);
      if (c < 0) throw DecodeError("invalid UTF-8 sequence at byte " + std::to_string(at));
    }
    offsets_.push_back(text_.size());
  }

  size_t size() const { return offsets_.size() - 1; }
  bool empty() const { return size() == 0; }
  const std::string& str() const { return text_; }

  std::string_view span(size_t begin, size_t end) const {
    return std::string_view(text_).substr(offsets_[begin], offsets_[end] - offsets_[begin]);
  }
  std::string_view at(size_t i) const { return span(i, i + 1); }

 private:
  std::string text_;
  std::vector<size_t> offsets_;
};

}  // namespace altok
