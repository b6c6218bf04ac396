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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

namespace altok {

struct StringHash {
  using is_transparent = void;
  size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

// Bidirectional string <-> dense id map.
class StringIndex {
 public:
  StringIndex() = default;
  explicit StringIndex(std::vector<std::string> strings) {
    for (auto& s : strings) add(std::move(s));
  }

  int32_t add(std::string s) {
    auto it = ids_.find(s);
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<int32_t>(strings_.size());
    ids_.emplace(s, id);
    strings_.push_back(std::move(s));
    return id;
  }

  // -1 when absent.
  int32_t find(std::string_view s) const {
    auto it = ids_.find(s);
    return it == ids_.end() ? -1 : it->second;
  }
  bool contains(std::string_view s) const { return find(s) >= 0; }

  const std::string& operator[](int32_t id) const { return strings_[static_cast<size_t>(id)]; }
  size_t size() const { return strings_.size(); }
  const std::vector<std::string>& strings() const { return strings_; }

 private:
  std::vector<std::string> strings_;
  std::unordered_map<std::string, int32_t, StringHash, std::equal_to<>> ids_;
};

// Thread count to use for `requested` (0 = hardware concurrency).
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Splits [0, n) into `chunks` contiguous ranges, runs fn(begin, end, partial)
// for each on up to `threads` workers, and returns the partials in chunk
// order. Merging them in that order gives a result that depends only on the
// chunk count, never on scheduling.
template <class Partial, class Fn>
std::vector<Partial> map_chunks(size_t n, size_t chunks, unsigned threads, Fn&& fn) {
  chunks = std::max<size_t>(1, std::min(chunks, std::max<size_t>(n, 1)));
  std::vector<Partial> partials(chunks);
  auto run = [&](size_t c) {
    const size_t begin = n * c / chunks;
    const size_t end = n * (c + 1) / chunks;
    fn(begin, end, partials[c]);
  };
  threads = std::min<unsigned>(threads, static_cast<unsigned>(chunks));
  if (threads <= 1) {
    for (size_t c = 0; c < chunks; ++c) run(c);
    return partials;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (size_t c = w; c < chunks; c += threads) run(c);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return partials;
}

// Chunk count for a parallel reduction. Deterministic reductions use a
// fixed count so results do not depend on the thread count.
inline size_t reduction_chunks(bool deterministic, unsigned threads) {
  return deterministic ? 64 : std::max(1u, threads);
}

}  // namespace altok
