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

#ifndef MENLI_SCORER_IO_HPP_
#define MENLI_SCORER_IO_HPP_

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "menli/nli.hpp"

namespace menli::scorer {

enum class Mode { kScalar, kNliForward, kNliBackward, kNliBoth };

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

struct ScoreRequest {
  std::string request_id;
  std::string text_a;  // premise / reference / source
  std::string text_b;  // hypothesis / candidate
  Mode mode = Mode::kScalar;

  friend bool operator==(const ScoreRequest&, const ScoreRequest&) = default;
};

struct ScoreResponse {
  std::string request_id;
  std::optional<double> scalar;
  std::optional<nli::NliTriple> forward;
  std::optional<nli::NliTriple> backward;
};

bool operator==(const ScoreResponse& a, const ScoreResponse& b);

using ResponseMap = std::map<std::string, ScoreResponse>;

inline constexpr std::string_view kScoresFormat = "menli-scores";

// Record codecs shared by the file and line protocols. Parsing throws
// kParseError (json shape) or kInvalidTriple.
std::string to_json_line(const ScoreRequest& r);
std::string to_json_line(const ScoreResponse& r);
ScoreRequest parse_request(std::string_view line);
ScoreResponse parse_response(std::string_view line,
                             double tolerance = nli::kSumTolerance);

/// Throws kInvalidArgument when the response does not
/// carry exactly what the request mode asks for.
void check_shape(const ScoreRequest& request, const ScoreResponse& response);

/// Writes a header line and one request per line sorted by id. Rejects
/// empty input, duplicate ids and empty texts before touching the file.
std::size_t write_requests(std::span<const ScoreRequest> requests,
                           const std::filesystem::path& path);
std::vector<ScoreRequest> read_requests(const std::filesystem::path& path);

void write_responses(const ResponseMap& responses, const std::filesystem::path& path);

/// Reads a response file and checks it covers exactly `expected_ids`.
/// Missing or unexpected ids raise kCoverageGap naming them; malformed lines
/// raise kParseError with the line number.
ResponseMap read_responses(const std::filesystem::path& path,
                           std::span<const std::string> expected_ids,
                           double tolerance = nli::kSumTolerance);

/// As above, and additionally checks each response against its request mode.
ResponseMap read_responses(const std::filesystem::path& path,
                           std::span<const ScoreRequest> requests,
                           double tolerance = nli::kSumTolerance);

/// Union of two response sets. Conflicting values for the same id raise
/// kIdMismatch, so merging is associative and order-independent.
ResponseMap merge_responses(const ResponseMap& a, const ResponseMap& b);

struct ExternalScorer {
  /// Shell command; {in} and {out} are replaced by quoted paths.
  std::string command_template;
  std::chrono::milliseconds timeout{std::chrono::minutes(30)};
  /// Skip the run when `out` is complete and its sidecar hash matches.
  bool use_cache = true;
};

struct RunResult {
  std::filesystem::path responses;
  ResponseMap values;
  bool cached = false;
};

/// Spawns the scorer on `requests`, waits, validates the response file.
/// Errors: kScorerFailed (nonzero exit, with stderr tail), kTimeout,
/// kCoverageGap, kInvalidArgument for a template lacking placeholders.
RunResult run_external_scorer(const ExternalScorer& scorer,
                              const std::filesystem::path& requests,
                              const std::filesystem::path& responses);

/// Splits `requests` into `shards` files under `workdir`, runs them
/// concurrently and merges the responses.
ResponseMap run_sharded(const ExternalScorer& scorer,
                        std::span<const ScoreRequest> requests, std::size_t shards,
                        const std::filesystem::path& workdir);

/// Long-running scorer speaking one JSON record per line over stdin/stdout.
class LineScorer {
 public:
  explicit LineScorer(const std::string& command,
                      std::chrono::milliseconds timeout = std::chrono::minutes(5));
  ~LineScorer();
  LineScorer(const LineScorer&) = delete;
  LineScorer& operator=(const LineScorer&) = delete;

  ScoreResponse score(const ScoreRequest& request);
  ResponseMap score_all(std::span<const ScoreRequest> requests);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// In-process lexical baselines: sentbleu, rougeL, neg_edit_distance.
bool is_builtin(std::string_view name);
std::vector<std::string> builtin_names();
double builtin_score(std::string_view name, std::string_view reference,
                     std::string_view candidate);
/// Scalar responses for scalar-mode requests; text_a is the reference.
/// Throws kUnknownScorer for unregistered names.
ResponseMap builtin_scorer(std::string_view name, std::span<const ScoreRequest> requests);

}  // namespace menli::scorer

#endif  // MENLI_SCORER_IO_HPP_
