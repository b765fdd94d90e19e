// Copyright 2026 The menli Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MENLI_SRC_JSONL_HPP_
#define MENLI_SRC_JSONL_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace menli::jsonl {

struct Line {
  std::size_t number = 0;  // 1-based
  nlohmann::json value;
};

/// Parses a JSON-lines file, skipping blank lines. When `format` is set, a
/// leading header {"format": format, "version": 1} is consumed and checked;
/// its absence is tolerated only if `header_required` is false.
std::vector<Line> read(const std::filesystem::path& path,
                       std::string_view format = {},
                       bool header_required = false,
                       nlohmann::json* header = nullptr);

/// Writes one compact record per line with an optional header.
void write(const std::filesystem::path& path,
           const std::vector<nlohmann::json>& records,
           const nlohmann::json* header = nullptr);

nlohmann::json header(std::string_view format);

}  // namespace menli::jsonl

#endif  // MENLI_SRC_JSONL_HPP_
