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

#ifndef MENLI_TOOLS_COMMANDS_HPP_
#define MENLI_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "menli/evalstats.hpp"
#include "menli/perturb.hpp"
#include "menli/suite.hpp"

namespace menli::cli {

namespace fs = std::filesystem;

/// One evaluation dataset. Adversarial datasets point at a suite file,
/// standard ones at a human-judgment file.
struct DatasetSpec {
  std::string name;
  stats::Category kind = stats::Category::kAdversarial;
  fs::path path;
  std::string level = "segment";  // standard only: segment | system
  stats::CorrelationMethod method = stats::CorrelationMethod::kPearson;
  stats::Aggregation aggregate = stats::Aggregation::kMean;
};

struct GenerateOptions {
  fs::path seeds;
  fs::path out;
  fs::path lexicon;  // empty: built-in
  std::vector<std::vector<Phenomenon>> phenomena;
  Setting setting = Setting::kRefBased;
  ParaMode para_mode = ParaMode::kOriginal;
  std::uint64_t seed = 0;
  std::string name;
};

struct ScoreOptions {
  fs::path suite;  // either a suite ...
  fs::path pairs;  // ... or {instance_id, text_a, text_b} records
  fs::path out;
  fs::path workdir;  // empty: <out>.work
  std::string metric;   // builtin name or a key of `scorers`
  std::string command;  // explicit external command template
  std::string metric_id;
  std::map<std::string, std::string> scorers;
  bool nli = false;
  bool ref_free_summarization = false;
  bool line_mode = false;
  std::size_t shards = 1;
  double timeout_seconds = 1800;
};

struct EvaluateOptions {
  std::vector<DatasetSpec> datasets;
  // Dataset name -> score files (one per metric).
  std::map<std::string, std::vector<fs::path>> scores;
  std::string pooling = "auto";  // auto | auto-loo | <strategy>
  fs::path out_dir;
};

struct CombineOptions {
  std::vector<DatasetSpec> datasets;
  std::map<std::string, fs::path> nli_scores;
  std::map<std::string, fs::path> base_scores;
  std::vector<double> weights;
  std::string pooling = "auto";
  fs::path out_dir;
};

struct ReportOptions {
  fs::path in;
  fs::path text;  // empty: stdout
  fs::path svg_dir;
};

/// Each command returns its JSON summary; `log` receives human-readable
/// progress. All throw menli::Error.
nlohmann::json cmd_generate(const GenerateOptions& opt, std::ostream& log);
nlohmann::json cmd_score(const ScoreOptions& opt, std::ostream& log);
nlohmann::json cmd_evaluate(const EvaluateOptions& opt, std::ostream& log);
nlohmann::json cmd_combine(const CombineOptions& opt, std::ostream& log);
nlohmann::json cmd_report(const ReportOptions& opt, std::ostream& log);

/// Parses "number,negation+number" into phenomenon lists; throws kUsage
/// naming the valid phenomena.
std::vector<std::vector<Phenomenon>> parse_phenomena(const std::string& list);

/// Full command-line entry point. Returns the process exit code; errors are
/// summarized as JSON on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Report rendering, shared by evaluate, combine and report.
std::string render_text(const nlohmann::json& report);
/// Writes the SVG plots a report supports into `dir`; returns their paths.
std::vector<fs::path> render_svg(const nlohmann::json& report, const fs::path& dir);

/// Writes `content` unless the file already holds exactly that.
void write_if_changed(const fs::path& path, const std::string& content);

}  // namespace menli::cli

#endif  // MENLI_TOOLS_COMMANDS_HPP_
