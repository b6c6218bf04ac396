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

#include <stdexcept>
#include <string>

namespace altok {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed UTF-8 input.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or unusable training data.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A string could not be segmented with the given vocabulary.
class TokenizeError : public Error {
 public:
  using Error::Error;
};

// Malformed model, corpus or alignment file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace altok
