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

#include "menli/score_file.hpp"

#include "json.hpp"
#include "jsonl.hpp"
#include "menli/error.hpp"

namespace menli {

using nlohmann::json;

bool ScoreFile::has_backward() const {
  if (backward.empty()) return false;
  for (const auto& [id, t] : forward) {
    if (!backward.contains(id)) return false;
  }
  return true;
}

ScoreFile read_score_file(const std::filesystem::path& path) {
  ScoreFile out;
  for (const auto& line : jsonl::read(path)) {
    const auto where = path.string() + ":" + std::to_string(line.number) + ": ";
    try {
      const auto& j = line.value;
      const auto id = j.at("instance_id").get<std::string>();
      const auto metric = j.at("metric_id").get<std::string>();
      if (out.metric_id.empty()) {
        out.metric_id = metric;
      } else if (metric != out.metric_id) {
        throw Error(ErrorCode::kParseError,
                    "mixed metric ids '" + out.metric_id + "' and '" + metric + "'");
      }
      bool fresh = false;
      if (j.contains("score")) {
        fresh = out.scalars.emplace(id, j.at("score").get<double>()).second;
      } else {
        const auto t = nli::NliTriple::make(j.at("e").get<double>(), j.at("c").get<double>(),
                                            j.at("n").get<double>());
        const auto dir = j.at("direction").get<std::string>();
        if (dir == "forward") {
          fresh = out.forward.emplace(id, t).second;
        } else if (dir == "backward") {
          fresh = out.backward.emplace(id, t).second;
        } else {
          throw Error(ErrorCode::kParseError, "unknown direction '" + dir + "'");
        }
      }
      if (!fresh) throw Error(ErrorCode::kParseError, "duplicate record for '" + id + "'");
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, where + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, where + e.what());
    }
  }
  if (!out.scalars.empty() && out.is_nli()) {
    throw Error(ErrorCode::kParseError, path.string() + ": mixes scalar and triple records");
  }
  return out;
}

void write_score_file(const ScoreFile& file, const std::filesystem::path& path) {
  std::vector<json> records;
  for (const auto& [id, v] : file.scalars) {
    records.push_back({{"instance_id", id}, {"metric_id", file.metric_id}, {"score", v}});
  }
  const auto triples = [&](const std::map<std::string, nli::NliTriple>& m,
                           const char* direction) {
    for (const auto& [id, t] : m) {
      records.push_back({{"instance_id", id},
                         {"metric_id", file.metric_id},
                         {"e", t.e()},
                         {"c", t.c()},
                         {"n", t.n()},
                         {"direction", direction}});
    }
  };
  triples(file.forward, "forward");
  triples(file.backward, "backward");
  jsonl::write(path, records);
}

ScoreBatch to_batch(const ScoreFile& file,
                    const std::optional<nli::PoolingStrategy>& strategy) {
  if (!file.is_nli()) return ScoreBatch(file.metric_id, file.scalars);
  if (!strategy) {
    throw Error(ErrorCode::kInvalidArgument,
                "metric '" + file.metric_id + "' has triples; a pooling strategy is needed");
  }
  std::map<std::string, double> pooled;
  for (const auto& [id, fwd] : file.forward) {
    const auto it = file.backward.find(id);
    pooled[id] = nli::pool(fwd, it == file.backward.end()
                                    ? std::nullopt
                                    : std::optional<nli::NliTriple>(it->second),
                           *strategy);
  }
  return ScoreBatch(file.metric_id + "/" + strategy->name(), pooled);
}

}  // namespace menli
