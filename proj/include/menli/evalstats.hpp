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

#ifndef MENLI_EVALSTATS_HPP_
#define MENLI_EVALSTATS_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "menli/correlation.hpp"
#include "menli/nli.hpp"
#include "menli/score_batch.hpp"
#include "menli/suite.hpp"

namespace menli::stats {

// ---------------------------------------------------------------------------
// Preference accuracy
// ---------------------------------------------------------------------------

struct GroupAccuracy {
  std::size_t correct = 0;
  std::size_t ties = 0;
  std::size_t total = 0;
  double accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
};

struct AccuracyReport {
  GroupAccuracy overall;
  std::map<std::string, GroupAccuracy> per_group;
  double accuracy() const { return overall.accuracy(); }
};

/// Label after the last ':' of an instance id ("s17:number" -> "number").
std::string phenomenon_of_id(std::string_view id);

/// An instance is correct iff para > adv strictly; ties count as wrong and
/// are tallied separately. Throws kIdMismatch when the id sets differ.
AccuracyReport preference_accuracy(
    const ScoreBatch& para, const ScoreBatch& adv,
    const std::function<std::string(std::string_view)>& group = phenomenon_of_id);

// ---------------------------------------------------------------------------
// Correlation with human judgments
// ---------------------------------------------------------------------------

enum class CorrelationMethod { kPearson, kSpearman, kKendall };
std::string_view to_string(CorrelationMethod m);
std::optional<CorrelationMethod> parse_correlation_method(std::string_view s);

struct HumanJudgment {
  std::string segment_id;
  std::string system_id;
  double score = 0.0;
  std::string dataset;
  std::string criterion;
  std::string level;
  std::string reference_set_id;
};

/// Instance id under which metric scores for a judged segment are stored.
std::string judgment_key(std::string_view system_id, std::string_view segment_id);

std::vector<HumanJudgment> read_judgments(const std::filesystem::path& path);

struct CorrelationResult {
  double value = 0.0;
  std::size_t n = 0;        // joined segments, or systems
  std::size_t dropped = 0;  // unmatched entries on either side
  bool degenerate = false;  // two systems: r is +-1 by construction
};

double correlate(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 CorrelationMethod method);

/// Correlation over (segment, system) pairs present on both sides.
CorrelationResult segment_level(const ScoreBatch& metric,
                                std::span<const HumanJudgment> judgments,
                                CorrelationMethod method = CorrelationMethod::kPearson);

/// Correlation of per-system means.
CorrelationResult system_level(const ScoreBatch& metric,
                               std::span<const HumanJudgment> judgments,
                               CorrelationMethod method = CorrelationMethod::kPearson);

enum class Aggregation { kMean, kMax };
std::optional<Aggregation> parse_aggregation(std::string_view s);

/// Collapses per-reference scores to one score per instance.
ScoreBatch multi_ref_aggregate(const std::map<std::string, std::vector<double>>& scores,
                               Aggregation mode, std::string metric_id = "");

// ---------------------------------------------------------------------------
// Pooling-strategy selection
// ---------------------------------------------------------------------------

enum class Category { kAdversarial, kStandard };

struct StrategyResult {
  nli::PoolingStrategy strategy;
  std::string dataset;
  std::string nli_metric;
  Category category = Category::kAdversarial;
  double performance = 0.0;
};

struct WinCount {
  std::size_t adversarial = 0;
  std::size_t standard = 0;
  std::size_t total() const { return adversarial + standard; }
  friend bool operator==(const WinCount&, const WinCount&) = default;
};

using WinTable = std::map<nli::PoolingStrategy, WinCount>;

/// For every (dataset, nli metric) cell the best strategy scores a win under
/// the dataset's category; all tied best strategies score. Every cell must
/// report every strategy in `expected` (kIncompleteGrid).
WinTable winning_frequency(std::span<const StrategyResult> results,
                           std::span<const nli::PoolingStrategy> expected);
WinTable winning_frequency(std::span<const StrategyResult> results);

/// Most total wins; ties go to the first strategy in (direction, formula)
/// order.
nli::PoolingStrategy select_strategy(const WinTable& table,
                                     std::span<const nli::PoolingStrategy> expected);

/// Selects from all datasets except `held_out`. Throws kTooFewDatasets when
/// fewer than two datasets are present.
nli::PoolingStrategy leave_one_out_strategy(
    std::span<const StrategyResult> results, std::string_view held_out,
    std::span<const nli::PoolingStrategy> expected);

struct LeaveOneOutEntry {
  std::string dataset;
  std::string nli_metric;
  Category category = Category::kAdversarial;
  nli::PoolingStrategy global_strategy;
  nli::PoolingStrategy loo_strategy;
  double global_performance = 0.0;
  double loo_performance = 0.0;
  double delta() const { return loo_performance - global_performance; }
};

/// Per-cell comparison of the globally selected strategy with the
/// leave-one-out selection.
std::vector<LeaveOneOutEntry> leave_one_out_report(
    std::span<const StrategyResult> results,
    std::span<const nli::PoolingStrategy> expected);

// ---------------------------------------------------------------------------
// Analyses
// ---------------------------------------------------------------------------

struct EditDistanceAnalysis {
  std::size_t failures = 0;
  std::size_t successes = 0;
  std::optional<double> mean_failure;
  std::optional<double> mean_success;
  std::optional<double> gap;  // failure mean - success mean
};

/// Mean normalized edit distance between the perturbation source and
/// cand_para, split by whether the metric preferred cand_para.
EditDistanceAnalysis edit_distance_analysis(const TestSuite& suite,
                                            const ScoreBatch& para,
                                            const ScoreBatch& adv);

/// Mean of the adversarial accuracies and standard correlations together.
double overall_performance(std::span<const double> accuracies,
                           std::span<const double> correlations);

struct PercentileSummary {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Mean with a percentile interval (linear interpolation), e.g. 2.5/97.5.
PercentileSummary percentile_summary(std::span<const double> values,
                                     double lower_pct = 2.5,
                                     double upper_pct = 97.5);

struct EnsembleGain {
  double mean_improvement = 0.0;
  double max_improvement = 0.0;
};

/// Improvement of ensemble overall performance over the base metric alone.
EnsembleGain ensemble_gain(std::span<const double> ensemble_overall,
                           double base_overall);

}  // namespace menli::stats

#endif  // MENLI_EVALSTATS_HPP_
