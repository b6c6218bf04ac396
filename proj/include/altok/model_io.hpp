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

// JSON model files.
//
//   unigram: {"pieces":[{"logprob":..,"piece":..},...],"type":"unigram","version":1}
//   paired:  {"config":{...},"counts":[[t,s,c],...],"source_model":{unigram},
//             "source_vocab":[...],"target_vocab":[...],"type":"paired-unigram","version":1}
//
// Keys are written sorted and numbers in shortest round-trip form, so
// save(load(save(m))) is byte-identical to save(m).

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "altok/error.hpp"
#include "altok/paired_model.hpp"
#include "altok/unigram.hpp"

namespace altok {

using Json = nlohmann::json;

inline constexpr int kModelVersion = 1;

inline Json to_json(const UnigramModel& model) {
  Json pieces = Json::array();
  for (const auto& p : model.pieces()) pieces.push_back({{"piece", p.piece}, {"logprob", p.log_prob}});
  return {{"version", kModelVersion}, {"type", "unigram"}, {"pieces", std::move(pieces)}};
}

inline Json to_json(const TrainConfig& c) {
  return {{"vocab_size", c.vocab_size},
          {"max_piece_len", c.max_piece_len},
          {"n_iterations", c.n_iterations},
          {"n_subiterations", c.n_subiterations},
          {"shrink_factor", c.shrink_factor},
          {"variant", to_string(c.variant)},
          {"deterministic_reduction", c.deterministic_reduction},
          {"normalize_posterior", c.normalize_posterior},
          {"substring_denominator", c.substring_denominator}};
}

inline Json to_json(const PairedModel& model) {
  Json counts = Json::array();
  for (const CoocEntry& e : model.table.entries()) counts.push_back(Json::array({e.target, e.source, e.count}));
  return {{"version", kModelVersion},
          {"type", "paired-unigram"},
          {"config", to_json(model.config)},
          {"source_vocab", model.table.source_vocab().strings()},
          {"target_vocab", model.table.target_vocab().strings()},
          {"counts", std::move(counts)},
          {"source_model", to_json(model.source_model)}};
}

namespace detail {

inline void check_header(const Json& j, std::string_view type) {
  if (!j.is_object()) throw FormatError("model file is not a JSON object");
  if (j.value("version", -1) != kModelVersion) throw FormatError("unsupported model version");
  if (j.value("type", std::string()) != type) {
    throw FormatError("expected a '" + std::string(type) + "' model, found '" + j.value("type", std::string("?")) + "'");
  }
}

}  // namespace detail

inline UnigramModel unigram_from_json(const Json& j) {
  try {
    detail::check_header(j, "unigram");
    std::vector<UnigramPiece> pieces;
    for (const auto& p : j.at("pieces")) pieces.push_back({p.at("piece").get<std::string>(), p.at("logprob").get<double>()});
    return UnigramModel(std::move(pieces));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed unigram model: ") + e.what());
  }
}

inline TrainConfig config_from_json(const Json& j, TrainConfig c = {}) {
  try {
    if (!j.is_object()) throw FormatError("config is not a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "vocab_size") c.vocab_size = value.get<size_t>();
      else if (key == "max_piece_len") c.max_piece_len = value.get<size_t>();
      else if (key == "n_iterations") c.n_iterations = value.get<size_t>();
      else if (key == "n_subiterations") c.n_subiterations = value.get<size_t>();
      else if (key == "shrink_factor") c.shrink_factor = value.get<double>();
      else if (key == "variant") c.variant = parse_variant(value.get<std::string>());
      else if (key == "deterministic_reduction") c.deterministic_reduction = value.get<bool>();
      else if (key == "normalize_posterior") c.normalize_posterior = value.get<bool>();
      else if (key == "substring_denominator") c.substring_denominator = value.get<bool>();
      else throw FormatError("unknown config key '" + key + "'");
    }
    return c;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed config: ") + e.what());
  }
}

inline PairedModel paired_from_json(const Json& j) {
  try {
    detail::check_header(j, "paired-unigram");
    PairedModel model;
    model.config = config_from_json(j.at("config"));
    model.source_model = unigram_from_json(j.at("source_model"));
    auto source_vocab = j.at("source_vocab").get<std::vector<std::string>>();
    if (source_vocab != source_vocabulary(model.source_model)) {
      throw FormatError("source_vocab does not match the embedded source model");
    }
    auto target_vocab = j.at("target_vocab").get<std::vector<std::string>>();
    std::vector<CoocEntry> entries;
    entries.reserve(j.at("counts").size());
    for (const auto& cell : j.at("counts")) {
      if (!cell.is_array() || cell.size() != 3) throw FormatError("count cell must be [t, s, count]");
      entries.push_back({cell[0].get<TokenId>(), cell[1].get<TokenId>(), cell[2].get<double>()});
    }
    model.table = CoocTable(std::move(target_vocab), std::move(source_vocab), std::move(entries));
    return model;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed paired model: ") + e.what());
  }
}

using AnyModel = std::variant<UnigramModel, PairedModel>;

inline std::string serialize(const Json& j) { return j.dump() + "\n"; }

inline std::string serialize(const UnigramModel& m) { return serialize(to_json(m)); }
inline std::string serialize(const PairedModel& m) { return serialize(to_json(m)); }

inline AnyModel parse_model(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  const std::string type = j.is_object() ? j.value("type", std::string()) : std::string();
  if (type == "unigram") return unigram_from_json(j);
  if (type == "paired-unigram") return paired_from_json(j);
  throw FormatError("unknown model type '" + type + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline AnyModel load_model(const std::string& path) { return parse_model(read_file(path)); }

}  // namespace altok
