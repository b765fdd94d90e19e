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

#include "jsonl.hpp"

#include <fstream>

#include "menli/error.hpp"

namespace menli::jsonl {

nlohmann::json header(std::string_view format) {
  return {{"format", std::string(format)}, {"version", 1}};
}

std::vector<Line> read(const std::filesystem::path& path,
                       std::string_view format, bool header_required,
                       nlohmann::json* header_out) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<Line> out;
  std::string line;
  std::size_t number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json value;
    try {
      value = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParseError, path.string() + ":" +
                                              std::to_string(number) + ": " +
                                              e.what());
    }
    if (first) {
      first = false;
      if (!format.empty()) {
        if (value.is_object() && value.contains("format")) {
          if (value["format"] != format || value.value("version", 0) != 1) {
            throw Error(ErrorCode::kParseError,
                        path.string() + ": expected header format '" +
                            std::string(format) + "' version 1");
          }
          if (header_out != nullptr) *header_out = value;
          continue;
        }
        if (header_required) {
          throw Error(ErrorCode::kParseError,
                      path.string() + ": missing header line");
        }
      }
    }
    out.push_back({number, std::move(value)});
  }
  return out;
}

void write(const std::filesystem::path& path,
           const std::vector<nlohmann::json>& records,
           const nlohmann::json* header) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  if (header != nullptr) out << header->dump() << '\n';
  for (const auto& r : records) out << r.dump() << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

}  // namespace menli::jsonl
