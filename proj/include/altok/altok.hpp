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

#include "altok/common.hpp"
#include "altok/cooc_table.hpp"
#include "altok/corpus.hpp"
#include "altok/error.hpp"
#include "altok/lattice.hpp"
#include "altok/metrics.hpp"
#include "altok/model_io.hpp"
#include "altok/paired_model.hpp"
#include "altok/paired_tokenizer.hpp"
#include "altok/paired_trainer.hpp"
#include "altok/pipeline.hpp"
#include "altok/textnorm.hpp"
#include "altok/unigram.hpp"
#include "altok/utf8.hpp"
#include "altok/word_aligner.hpp"
