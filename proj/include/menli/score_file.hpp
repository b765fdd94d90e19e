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

#ifndef MENLI_SCORE_FILE_HPP_
#define MENLI_SCORE_FILE_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "menli/nli.hpp"
#include "menli/score_batch.hpp"

namespace menli {

/// Metric output keyed by instance id. Scalar metrics fill `scalars`; NLI
/// metrics fill one or both direction maps.
///
/// On disk every line is {instance_id, metric_id, score} or
/// {instance_id, metric_id, e, c, n, direction} with direction
/// "forward" or "backward".
struct ScoreFile {
  std::string metric_id;
  std::map<std::string, double> scalars;
  std::map<std::string, nli::NliTriple> forward;
  std::map<std::string, nli::NliTriple> backward;

  bool is_nli() const { return !forward.empty() || !backward.empty(); }
  /// True when every forward id also has a backward triple.
  bool has_backward() const;
};

ScoreFile read_score_file(const std::filesystem::path& path);
void write_score_file(const ScoreFile& file, const std::filesystem::path& path);

/// Scalar files convert directly; NLI files are pooled with `strategy`
/// (kInvalidArgument if absent, kMissingDirection if a needed backward
/// triple is missing).
ScoreBatch to_batch(const ScoreFile& file,
                    const std::optional<nli::PoolingStrategy>& strategy = std::nullopt);

}  // namespace menli

#endif  // MENLI_SCORE_FILE_HPP_
