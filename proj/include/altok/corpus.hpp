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

// Parallel corpus files: two line-aligned UTF-8 files, or one TSV file with
// source<TAB>target per line.

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "altok/error.hpp"
#include "altok/utf8.hpp"

namespace altok {

class LineCountMismatch : public FormatError {
 public:
  LineCountMismatch(size_t source, size_t target)
      : FormatError("parallel files differ in length: " + std::to_string(source) + " source lines vs " +
                    std::to_string(target) + " target lines"),
        source_lines(source),
        target_lines(target) {}
  size_t source_lines;
  size_t target_lines;
};

// Lines of a UTF-8 file without terminators. Invalid UTF-8 is an error.
inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!is_valid_utf8(line)) {
      throw DecodeError(path + ":" + std::to_string(lines.size() + 1) + ": invalid UTF-8");
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

struct ParallelText {
  std::vector<std::string> source;
  std::vector<std::string> target;
  size_t size() const { return source.size(); }
};

inline ParallelText read_parallel(const std::string& source_path, const std::string& target_path) {
  ParallelText p{read_lines(source_path), read_lines(target_path)};
  if (p.source.size() != p.target.size()) throw LineCountMismatch(p.source.size(), p.target.size());
  return p;
}

inline ParallelText read_tsv(const std::string& path) {
  ParallelText p;
  size_t n = 0;
  for (auto& line : read_lines(path)) {
    ++n;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError(path + ":" + std::to_string(n) + ": expected exactly one tab");
    }
    p.source.push_back(line.substr(0, tab));
    p.target.push_back(line.substr(tab + 1));
  }
  return p;
}

}  // namespace altok
