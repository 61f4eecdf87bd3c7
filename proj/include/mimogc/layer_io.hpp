// Copyright 2026 The mimogc Authors
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

#include <filesystem>
#include <string>

#include "mimogc/lmgc.hpp"

namespace mimogc {

/// JSON document of named tensors:
///   {"variant": "LMGC_EQ14", "K": 4, "leaky_slope": 0.2, "seed": 0,
///    "acm_identity": false,
///    "tensors": [{"name": "W1", "rows": d, "cols": c, "data": [...]}, ...,
///                {"name": "v1", "rows": 2Kc, "cols": 1, "data": [...]}, ...]}
/// Data is row-major. W^(k) and v_(k) use 1-based names.
std::string layer_to_json(const LmgcLayer& layer);
/// Throws ParseError on malformed documents and InvalidArgument when the
/// tensors do not form a valid layer.
LmgcLayer layer_from_json(const std::string& text);

void save_layer(const LmgcLayer& layer, const std::filesystem::path& path);
LmgcLayer load_layer(const std::filesystem::path& path);

}  // namespace mimogc
