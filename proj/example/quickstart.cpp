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

// Trains a small paired tokenizer on an in-memory corpus and prints how it
// segments a sentence with and without the source side.

#include <iostream>
#include <string>
#include <vector>

#include "altok/altok.hpp"

int main() {
  const std::vector<std::string> source = {
      "the cat sleeps", "the dog sleeps", "a cat eats", "a dog eats", "the cats sleep", "the dogs eat",
      "a small cat",    "a small dog",    "the cat eats", "the dog sleeps now",
  };
  const std::vector<std::string> target = {
      "le chat dort",  "le chien dort",  "un chat mange", "un chien mange", "les chats dorment", "les chiens mangent",
      "un petit chat", "un petit chien", "le chat mange", "le chien dort maintenant",
  };

  altok::PipelineOptions options;
  options.train.vocab_size = 40;
  options.source_vocab_size = 40;
  const altok::PairedModel model = altok::train_pipeline({source, target}, options);

  const std::string src = altok::normalize("the dogs sleep");
  const std::string tgt = altok::normalize("les chiens dorment");
  auto print = [](const char* label, const std::vector<std::string>& tokens) {
    std::cout << label;
    for (const auto& t : tokens) std::cout << ' ' << t;
    std::cout << '\n';
  };
  print("paired:  ", altok::tokenize_paired(model, tgt, src));
  print("marginal:", altok::tokenize_marginal(model, tgt));
  std::cout << "target vocabulary: " << model.table.target_size() << " pieces\n";
  return 0;
}
