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

#include "menli/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "jsonl.hpp"
#include "menli/error.hpp"
#include "menli/textops.hpp"

namespace menli::stats {

std::string phenomenon_of_id(std::string_view id) {
  const auto colon = id.rfind(':');
  return std::string(colon == std::string_view::npos ? id : id.substr(colon + 1));
}

AccuracyReport preference_accuracy(
    const ScoreBatch& para, const ScoreBatch& adv,
    const std::function<std::string(std::string_view)>& group) {
  if (para.ids() != adv.ids()) {
    throw Error(ErrorCode::kIdMismatch,
                "para and adv batches cover different instances (" +
                    std::to_string(para.size()) + " vs " + std::to_string(adv.size()) + ")");
  }
  AccuracyReport report;
  const auto& ids = para.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const double p = para.values()(k);
    const double a = adv.values()(k);
    auto& g = report.per_group[group(ids[i])];
    for (GroupAccuracy* acc : {&report.overall, &g}) {
      ++acc->total;
      if (p > a) ++acc->correct;
      if (p == a) ++acc->ties;
    }
  }
  return report;
}

std::string_view to_string(CorrelationMethod m) {
  switch (m) {
    case CorrelationMethod::kPearson: return "pearson";
    case CorrelationMethod::kSpearman: return "spearman";
    case CorrelationMethod::kKendall: return "kendall";
  }
  return "pearson";
}

std::optional<CorrelationMethod> parse_correlation_method(std::string_view s) {
  if (s == "pearson") return CorrelationMethod::kPearson;
  if (s == "spearman") return CorrelationMethod::kSpearman;
  if (s == "kendall") return CorrelationMethod::kKendall;
  return std::nullopt;
}

std::string judgment_key(std::string_view system_id, std::string_view segment_id) {
  return std::string(system_id) + "|" + std::string(segment_id);
}

std::vector<HumanJudgment> read_judgments(const std::filesystem::path& path) {
  std::vector<HumanJudgment> out;
  for (const auto& line : jsonl::read(path)) {
    const auto& j = line.value;
    try {
      HumanJudgment h;
      const auto as_text = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      h.segment_id = as_text(j.at("segment_id"));
      h.system_id = as_text(j.at("system_id"));
      h.score = j.at("score").get<double>();
      h.dataset = j.value("dataset", "");
      h.criterion = j.value("criterion", "");
      h.level = j.value("level", "");
      h.reference_set_id = j.value("reference_set_id", "");
      out.push_back(std::move(h));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError, path.string() + ":" +
                                              std::to_string(line.number) + ": " + e.what());
    }
  }
  return out;
}

double correlate(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 CorrelationMethod method) {
  switch (method) {
    case CorrelationMethod::kPearson: return pearson(x, y);
    case CorrelationMethod::kSpearman: return spearman(x, y);
    case CorrelationMethod::kKendall: return kendall(x, y);
  }
  return 0.0;
}

namespace {

struct Joined {
  std::vector<double> metric;
  std::vector<double> human;
  std::vector<std::string> systems;
  std::size_t dropped = 0;
};

Joined join(const ScoreBatch& metric, std::span<const HumanJudgment> judgments) {
  Joined out;
  std::set<std::string> matched;
  for (const auto& h : judgments) {
    const auto key = judgment_key(h.system_id, h.segment_id);
    const auto v = metric.find(key);
    if (!v) {
      ++out.dropped;
      continue;
    }
    matched.insert(key);
    out.metric.push_back(*v);
    out.human.push_back(h.score);
    out.systems.push_back(h.system_id);
  }
  out.dropped += metric.ids().size() - matched.size();
  if (out.metric.empty()) {
    throw Error(ErrorCode::kEmptyJoin, "no metric score matches a judgment");
  }
  return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

CorrelationResult segment_level(const ScoreBatch& metric,
                                std::span<const HumanJudgment> judgments,
                                CorrelationMethod method) {
  const Joined j = join(metric, judgments);
  CorrelationResult r;
  r.n = j.metric.size();
  r.dropped = j.dropped;
  r.value = correlate(to_vector(j.metric), to_vector(j.human), method);
  return r;
}

CorrelationResult system_level(const ScoreBatch& metric,
                               std::span<const HumanJudgment> judgments,
                               CorrelationMethod method) {
  const Joined j = join(metric, judgments);
  std::map<std::string, std::tuple<double, double, std::size_t>> sums;
  for (std::size_t i = 0; i < j.metric.size(); ++i) {
    auto& [m, h, n] = sums[j.systems[i]];
    m += j.metric[i];
    h += j.human[i];
    ++n;
  }
  if (sums.size() < 2) {
    throw Error(ErrorCode::kTooFewSystems, "system-level correlation needs >= 2 systems");
  }
  Eigen::VectorXd m(static_cast<Eigen::Index>(sums.size()));
  Eigen::VectorXd h(m.size());
  Eigen::Index k = 0;
  for (const auto& [system, s] : sums) {
    const auto& [ms, hs, n] = s;
    m(k) = ms / static_cast<double>(n);
    h(k) = hs / static_cast<double>(n);
    ++k;
  }
  CorrelationResult r;
  r.n = sums.size();
  r.dropped = j.dropped;
  r.degenerate = sums.size() == 2;
  r.value = correlate(m, h, method);
  return r;
}

std::optional<Aggregation> parse_aggregation(std::string_view s) {
  if (s == "mean") return Aggregation::kMean;
  if (s == "max") return Aggregation::kMax;
  return std::nullopt;
}

ScoreBatch multi_ref_aggregate(const std::map<std::string, std::vector<double>>& scores,
                               Aggregation mode, std::string metric_id) {
  std::map<std::string, double> out;
  for (const auto& [id, values] : scores) {
    if (values.empty()) {
      throw Error(ErrorCode::kEmptyList, "instance '" + id + "' has no reference scores");
    }
    const auto v = to_vector(values);
    out[id] = mode == Aggregation::kMean ? v.mean() : v.maxCoeff();
  }
  return ScoreBatch(std::move(metric_id), out);
}

WinTable winning_frequency(std::span<const StrategyResult> results,
                           std::span<const nli::PoolingStrategy> expected) {
  struct Cell {
    Category category;
    std::map<nli::PoolingStrategy, double> perf;
  };
  std::map<std::pair<std::string, std::string>, Cell> cells;
  for (const auto& r : results) {
    auto [it, inserted] =
        cells.try_emplace({r.dataset, r.nli_metric}, Cell{r.category, {}});
    if (!inserted && it->second.category != r.category) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dataset '" + r.dataset + "' reported under two categories");
    }
    it->second.perf[r.strategy] = r.performance;
  }
  WinTable table;
  for (const auto& s : expected) table[s];
  for (const auto& [key, cell] : cells) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : expected) {
      const auto it = cell.perf.find(s);
      if (it == cell.perf.end()) {
        throw Error(ErrorCode::kIncompleteGrid,
                    "cell (" + key.first + ", " + key.second + ") lacks " + s.name());
      }
      if (it->second > best) best = it->second;
    }
    for (const auto& s : expected) {
      if (cell.perf.at(s) != best) continue;
      auto& w = table[s];
      if (cell.category == Category::kAdversarial) {
        ++w.adversarial;
      } else {
        ++w.standard;
      }
    }
  }
  return table;
}

WinTable winning_frequency(std::span<const StrategyResult> results) {
  const auto all = nli::all_strategies();
  return winning_frequency(results, all);
}

nli::PoolingStrategy select_strategy(const WinTable& table,
                                     std::span<const nli::PoolingStrategy> expected) {
  if (expected.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no candidate strategies");
  }
  std::vector<nli::PoolingStrategy> order(expected.begin(), expected.end());
  std::sort(order.begin(), order.end());
  nli::PoolingStrategy best = order.front();
  std::size_t best_wins = 0;
  bool first = true;
  for (const auto& s : order) {
    const auto it = table.find(s);
    const std::size_t wins = it == table.end() ? 0 : it->second.total();
    if (first || wins > best_wins) {
      best = s;
      best_wins = wins;
      first = false;
    }
  }
  return best;
}

nli::PoolingStrategy leave_one_out_strategy(
    std::span<const StrategyResult> results, std::string_view held_out,
    std::span<const nli::PoolingStrategy> expected) {
  std::set<std::string> datasets;
  for (const auto& r : results) datasets.insert(r.dataset);
  if (datasets.size() < 2) {
    throw Error(ErrorCode::kTooFewDatasets,
                "leave-one-out selection needs at least two datasets");
  }
  std::vector<StrategyResult> kept;
  for (const auto& r : results) {
    if (r.dataset != held_out) kept.push_back(r);
  }
  return select_strategy(winning_frequency(kept, expected), expected);
}

std::vector<LeaveOneOutEntry> leave_one_out_report(
    std::span<const StrategyResult> results,
    std::span<const nli::PoolingStrategy> expected) {
  const auto global = select_strategy(winning_frequency(results, expected), expected);
  std::map<std::pair<std::string, std::string>,
           std::pair<Category, std::map<nli::PoolingStrategy, double>>>
      cells;
  for (const auto& r : results) {
    auto& cell = cells[{r.dataset, r.nli_metric}];
    cell.first = r.category;
    cell.second[r.strategy] = r.performance;
  }
  std::map<std::string, nli::PoolingStrategy> loo_by_dataset;
  std::vector<LeaveOneOutEntry> out;
  for (const auto& [key, cell] : cells) {
    auto it = loo_by_dataset.find(key.first);
    if (it == loo_by_dataset.end()) {
      it = loo_by_dataset
               .emplace(key.first, leave_one_out_strategy(results, key.first, expected))
               .first;
    }
    LeaveOneOutEntry e;
    e.dataset = key.first;
    e.nli_metric = key.second;
    e.category = cell.first;
    e.global_strategy = global;
    e.loo_strategy = it->second;
    e.global_performance = cell.second.at(global);
    e.loo_performance = cell.second.at(it->second);
    out.push_back(e);
  }
  return out;
}

EditDistanceAnalysis edit_distance_analysis(const TestSuite& suite,
                                            const ScoreBatch& para,
                                            const ScoreBatch& adv) {
  EditDistanceAnalysis out;
  double fail_sum = 0.0;
  double success_sum = 0.0;
  for (const auto& inst : suite.instances) {
    const double d = text::levenshtein_normalized(inst.perturbation_source, inst.cand_para);
    if (para.at(inst.id) > adv.at(inst.id)) {
      ++out.successes;
      success_sum += d;
    } else {
      ++out.failures;
      fail_sum += d;
    }
  }
  if (out.failures > 0) out.mean_failure = fail_sum / static_cast<double>(out.failures);
  if (out.successes > 0) {
    out.mean_success = success_sum / static_cast<double>(out.successes);
  }
  if (out.mean_failure && out.mean_success) {
    out.gap = *out.mean_failure - *out.mean_success;
  }
  return out;
}

double overall_performance(std::span<const double> accuracies,
                           std::span<const double> correlations) {
  if (accuracies.empty() || correlations.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "overall performance needs adversarial and standard results");
  }
  double sum = 0.0;
  for (double a : accuracies) sum += a;
  for (double c : correlations) sum += c;
  return sum / static_cast<double>(accuracies.size() + correlations.size());
}

PercentileSummary percentile_summary(std::span<const double> values,
                                     double lower_pct, double upper_pct) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "no values to summarize");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto at = [&](double pct) {
    const double pos = pct / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
  };
  PercentileSummary s;
  s.mean = to_vector(sorted).mean();
  s.lower = at(lower_pct);
  s.upper = at(upper_pct);
  return s;
}

EnsembleGain ensemble_gain(std::span<const double> ensemble_overall,
                           double base_overall) {
  if (ensemble_overall.empty()) throw Error(ErrorCode::kEmptyInput, "no ensemble results");
  EnsembleGain g;
  g.max_improvement = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double v : ensemble_overall) {
    sum += v - base_overall;
    g.max_improvement = std::max(g.max_improvement, v - base_overall);
  }
  g.mean_improvement = sum / static_cast<double>(ensemble_overall.size());
  return g;
}

}  // namespace menli::stats
