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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

#include "menli/correlation.hpp"
#include "menli/error.hpp"
#include "menli/evalstats.hpp"
#include "oracles.hpp"

namespace {

using menli::ErrorCode;
using menli::ScoreBatch;
using menli::nli::Direction;
using menli::nli::Formula;
using menli::nli::PoolingStrategy;
namespace st = menli::stats;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const menli::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kUsage;
}

Eigen::VectorXd vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

TEST(Correlation, Examples) {
  const auto x = vec({1, 2, 3});
  EXPECT_NEAR(st::pearson(x, vec({1, 2, 4})), 3.0 / std::sqrt(2.0 * 42.0 / 9.0), 1e-15);
  EXPECT_NEAR(st::pearson(x, vec({1, 2, 4})), 0.9820, 5e-5);
  EXPECT_DOUBLE_EQ(st::pearson(x, x), 1.0);
  EXPECT_DOUBLE_EQ(st::pearson(x, Eigen::VectorXd(-x)), -1.0);
  EXPECT_NEAR(st::kendall(x, vec({1, 3, 2})), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(st::spearman(x, vec({1, 8, 27})), 1.0);
  EXPECT_DOUBLE_EQ(st::spearman(x, vec({3, 2, 1})), -1.0);
  // Ties: ranks [1.5, 1.5, 3] against [1, 2, 3].
  EXPECT_NEAR(st::spearman(vec({1, 1, 2}), x), st::pearson(vec({1.5, 1.5, 3}), x), 1e-15);
  EXPECT_NEAR(st::spearman(vec({1, 1, 2}), x), std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(Correlation, Errors) {
  EXPECT_EQ(code_of([] { st::pearson(vec({1, 1, 1}), vec({1, 2, 3})); }),
            ErrorCode::kConstantVector);
  EXPECT_EQ(code_of([] { st::pearson(vec({1, 2}), vec({1, 2, 3})); }),
            ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([] { st::pearson(vec({1}), vec({1})); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([] { st::kendall(vec({2, 2, 2}), vec({1, 2, 3})); }), ErrorCode::kAllTied);
  EXPECT_EQ(code_of([] { st::spearman(vec({2, 2}), vec({1, 2})); }),
            ErrorCode::kConstantVector);
}

// Exhaustive agreement with definitional oracles on short integer vectors.
TEST(Correlation, ExhaustiveSmallVectors) {
  for (int n = 2; n <= 4; ++n) {
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 4;
    std::vector<std::vector<long long>> all(total, std::vector<long long>(n));
    for (int code = 0; code < total; ++code) {
      int c = code;
      for (int i = 0; i < n; ++i, c /= 4) all[code][i] = 1 + c % 4;
    }
    for (const auto& xs : all) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x(i) = static_cast<double>(xs[i]);
      for (const auto& ys : all) {
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) y(i) = static_cast<double>(ys[i]);
        const auto p = oracle::pearson(xs, ys);
        const auto s = oracle::spearman(xs, ys);
        const auto k = oracle::kendall(xs, ys);
        if (p) {
          ASSERT_NEAR(st::pearson(x, y), *p, 1e-12);
          ASSERT_NEAR(st::spearman(x, y), *s, 1e-12);
        } else {
          ASSERT_THROW(st::pearson(x, y), menli::Error);
        }
        if (k) {
          ASSERT_NEAR(st::kendall(x, y), *k, 1e-12);
        } else {
          ASSERT_THROW(st::kendall(x, y), menli::Error);
        }
      }
    }
  }
}

TEST(Correlation, RandomLongVectors) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> len(2, 50), small(0, 6);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = len(rng);
    std::vector<double> xs(n), ys(n);
    const bool ties = trial % 2 == 0;
    for (int i = 0; i < n; ++i) {
      xs[i] = ties ? small(rng) : g(rng);
      ys[i] = ties ? small(rng) : g(rng);
    }
    const auto x = vec(xs), y = vec(ys);
    if (const auto k = oracle::kendall(xs, ys)) {
      EXPECT_NEAR(st::kendall(x, y), *k, 1e-12);
    }
    if (const auto p = oracle::pearson(xs, ys)) {
      EXPECT_NEAR(st::pearson(x, y), *p, 1e-12);
      EXPECT_NEAR(st::spearman(x, y), *oracle::spearman(xs, ys), 1e-12);
    }
  }
}

TEST(Correlation, FixedSizeVectors) {
  const Eigen::Vector4d x(1, 2, 3, 4), y(2, 1, 4, 3);
  EXPECT_NEAR(st::kendall(x, y), st::kendall(Eigen::VectorXd(x), Eigen::VectorXd(y)), 0);
  EXPECT_NEAR(st::spearman(x, y), 0.6, 1e-15);
}

TEST(Accuracy, StrictPreference) {
  const ScoreBatch para("m", {{"a:negation", 0.9}, {"b:negation", 0.5}, {"c:number", 0.7},
                              {"d:number", 0.2}});
  const ScoreBatch adv("m", {{"a:negation", 0.1}, {"b:negation", 0.5}, {"c:number", 0.6},
                             {"d:number", 0.1}});
  const auto r = st::preference_accuracy(para, adv);
  EXPECT_DOUBLE_EQ(r.accuracy(), 0.75);
  EXPECT_EQ(r.overall.ties, 1u);
  EXPECT_DOUBLE_EQ(r.per_group.at("negation").accuracy(), 0.5);
  EXPECT_DOUBLE_EQ(r.per_group.at("number").accuracy(), 1.0);
  EXPECT_DOUBLE_EQ(st::preference_accuracy(para, para).accuracy(), 0.0);
  const ScoreBatch other("m", {{"zzz", 1.0}});
  EXPECT_EQ(code_of([&] { st::preference_accuracy(para, other); }), ErrorCode::kIdMismatch);
  EXPECT_EQ(st::phenomenon_of_id("s17:number+negation"), "number+negation");
}

TEST(Accuracy, InvariantUnderIncreasingTransform) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  std::map<std::string, double> p, a, pt, at;
  for (int i = 0; i < 300; ++i) {
    const auto id = "s" + std::to_string(i) + ":x";
    p[id] = u(rng);
    a[id] = u(rng);
    pt[id] = std::exp(3 * p[id]) + 1;
    at[id] = std::exp(3 * a[id]) + 1;
  }
  EXPECT_EQ(st::preference_accuracy(ScoreBatch("m", p), ScoreBatch("m", a)).overall.correct,
            st::preference_accuracy(ScoreBatch("m", pt), ScoreBatch("m", at)).overall.correct);
}

std::vector<st::HumanJudgment> judgments_fixture() {
  // 3 systems x 4 segments.
  std::vector<st::HumanJudgment> out;
  const double human[3][4] = {{1, 2, 3, 4}, {2, 2, 2, 2}, {4, 5, 3, 4}};
  for (int s = 0; s < 3; ++s) {
    for (int g = 0; g < 4; ++g) {
      st::HumanJudgment j;
      j.system_id = "sys" + std::to_string(s);
      j.segment_id = "seg" + std::to_string(g);
      j.score = human[s][g];
      out.push_back(j);
    }
  }
  return out;
}

ScoreBatch metric_fixture() {
  const double metric[3][4] = {{0.1, 0.2, 0.3, 0.2}, {0.4, 0.4, 0.2, 0.2}, {0.9, 0.5, 0.6, 0.8}};
  std::map<std::string, double> m;
  for (int s = 0; s < 3; ++s) {
    for (int g = 0; g < 4; ++g) {
      m[st::judgment_key("sys" + std::to_string(s), "seg" + std::to_string(g))] = metric[s][g];
    }
  }
  m["unjudged|x"] = 0.0;
  return ScoreBatch("m", m);
}

TEST(Judgments, SystemLevelHandAverages) {
  const auto j = judgments_fixture();
  const auto m = metric_fixture();
  // System means: human (2.5, 2, 4), metric (0.2, 0.3, 0.7).
  const auto r = st::system_level(m, j);
  EXPECT_EQ(r.n, 3u);
  EXPECT_FALSE(r.degenerate);
  EXPECT_NEAR(r.value, *oracle::pearson(std::vector<double>{2.5, 2, 4},
                                        std::vector<double>{0.2, 0.3, 0.7}),
              1e-12);
  auto shuffled = j;
  std::reverse(shuffled.begin(), shuffled.end());
  EXPECT_NEAR(st::system_level(m, shuffled).value, r.value, 1e-12);
  auto doubled = j;
  doubled.insert(doubled.end(), j.begin(), j.end());
  EXPECT_NEAR(st::system_level(m, doubled).value, r.value, 1e-12);

  const std::vector<st::HumanJudgment> two(j.begin(), j.begin() + 8);
  const auto deg = st::system_level(m, two);
  EXPECT_TRUE(deg.degenerate);
  EXPECT_NEAR(std::abs(deg.value), 1.0, 1e-12);
  const std::vector<st::HumanJudgment> one(j.begin(), j.begin() + 4);
  EXPECT_EQ(code_of([&] { st::system_level(m, one); }), ErrorCode::kTooFewSystems);
}

TEST(Judgments, SegmentLevelJoin) {
  auto j = judgments_fixture();
  st::HumanJudgment orphan;
  orphan.system_id = "ghost";
  orphan.segment_id = "seg0";
  j.push_back(orphan);
  const auto r = st::segment_level(metric_fixture(), j);
  EXPECT_EQ(r.n, 12u);
  EXPECT_EQ(r.dropped, 2u);  // one unmatched judgment, one unjudged metric id

  std::map<std::string, double> same;
  for (const auto& h : judgments_fixture()) {
    same[st::judgment_key(h.system_id, h.segment_id)] = h.score;
  }
  EXPECT_DOUBLE_EQ(st::segment_level(ScoreBatch("m", same), judgments_fixture()).value, 1.0);

  const ScoreBatch none("m", {{"nothing|here", 1.0}});
  EXPECT_EQ(code_of([&] { st::segment_level(none, judgments_fixture()); }), ErrorCode::kEmptyJoin);
  const ScoreBatch single("m", {{st::judgment_key("sys0", "seg0"), 1.0}});
  EXPECT_THROW(st::segment_level(single, judgments_fixture()), menli::Error);
}

TEST(Judgments, ReadFile) {
  const auto path = std::filesystem::temp_directory_path() / "menli_judgments.jsonl";
  std::ofstream(path) << R"({"segment_id": 3, "system_id": "A", "score": 0.5})" << "\n"
                      << R"({"segment_id": "4", "system_id": "B", "score": 1})" << "\n";
  const auto j = st::read_judgments(path);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0].segment_id, "3");
  EXPECT_EQ(j[1].score, 1.0);
  std::ofstream(path) << R"({"segment_id": "4", "system_id": "B"})" << "\n";
  EXPECT_EQ(code_of([&] { st::read_judgments(path); }), ErrorCode::kParseError);
}

TEST(MultiRef, MeanAndMax) {
  const std::map<std::string, std::vector<double>> s = {{"a", {0.2, 0.8}}, {"b", {0.4}}};
  const auto mean = st::multi_ref_aggregate(s, st::Aggregation::kMean);
  const auto max = st::multi_ref_aggregate(s, st::Aggregation::kMax);
  EXPECT_DOUBLE_EQ(mean.at("a"), 0.5);
  EXPECT_DOUBLE_EQ(max.at("a"), 0.8);
  EXPECT_DOUBLE_EQ(mean.at("b"), 0.4);
  EXPECT_DOUBLE_EQ(max.at("b"), 0.4);
  const std::map<std::string, std::vector<double>> empty = {{"a", {}}};
  EXPECT_EQ(code_of([&] { st::multi_ref_aggregate(empty, st::Aggregation::kMean); }),
            ErrorCode::kEmptyList);
}

std::vector<st::StrategyResult> grid(
    const std::map<std::string, std::pair<st::Category, PoolingStrategy>>& winners,
    const std::vector<PoolingStrategy>& strategies) {
  std::vector<st::StrategyResult> out;
  for (const auto& [dataset, win] : winners) {
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      const double perf = strategies[k] == win.second ? 0.9 : 0.1 + 0.01 * static_cast<double>(k);
      out.push_back({strategies[k], dataset, "nli", win.first, perf});
    }
  }
  return out;
}

TEST(Winning, HandTally) {
  const auto all = menli::nli::all_strategies();
  const PoolingStrategy e_fwd{Direction::kForward, Formula::kE};
  const PoolingStrategy e_bi{Direction::kBi, Formula::kE};
  const auto results = grid({{"d1", {st::Category::kAdversarial, e_fwd}},
                             {"d2", {st::Category::kAdversarial, e_fwd}},
                             {"d3", {st::Category::kStandard, e_bi}}},
                            all);
  const auto table = st::winning_frequency(results);
  EXPECT_EQ(table.at(e_fwd), (st::WinCount{2, 0}));
  EXPECT_EQ(table.at(e_bi), (st::WinCount{0, 1}));
  std::size_t total = 0;
  for (const auto& [s, w] : table) total += w.total();
  EXPECT_EQ(total, 3u);
  EXPECT_EQ(st::select_strategy(table, all), e_fwd);

  // Leaving out d1 ties e_fwd and e_bi at one win; enum order picks forward.
  EXPECT_EQ(st::leave_one_out_strategy(results, "d1", all), e_fwd);
  EXPECT_EQ(st::leave_one_out_strategy(results, "d3", all), e_fwd);
  const auto report = st::leave_one_out_report(results, all);
  ASSERT_EQ(report.size(), 3u);
  for (const auto& e : report) EXPECT_EQ(e.global_strategy, e_fwd);
}

TEST(Winning, TiesCreditEveryone) {
  const auto all = menli::nli::all_strategies();
  std::vector<st::StrategyResult> results;
  for (const auto& s : all) results.push_back({s, "d", "nli", st::Category::kStandard, 0.5});
  const auto table = st::winning_frequency(results);
  for (const auto& s : all) EXPECT_EQ(table.at(s).standard, 1u);
  EXPECT_EQ(st::select_strategy(table, all), all.front());
}

TEST(Winning, Errors) {
  const auto all = menli::nli::all_strategies();
  auto results = grid({{"d1", {st::Category::kAdversarial, all[0]}}}, all);
  results.pop_back();
  EXPECT_EQ(code_of([&] { st::winning_frequency(results); }), ErrorCode::kIncompleteGrid);
  const auto one = grid({{"d1", {st::Category::kAdversarial, all[0]}}}, all);
  EXPECT_EQ(code_of([&] { st::leave_one_out_strategy(one, "d1", all); }),
            ErrorCode::kTooFewDatasets);
  auto mixed = grid({{"d1", {st::Category::kAdversarial, all[0]}}}, all);
  mixed[3].category = st::Category::kStandard;
  EXPECT_EQ(code_of([&] { st::winning_frequency(mixed); }), ErrorCode::kInvalidArgument);
}

TEST(Winning, HoldingOutTheOnlyWinSwitchesSelection) {
  const auto all = menli::nli::all_strategies();
  const auto results = grid({{"d1", {st::Category::kAdversarial, all[7]}},
                             {"d2", {st::Category::kAdversarial, all[7]}},
                             {"d3", {st::Category::kStandard, all[3]}},
                             {"d4", {st::Category::kStandard, all[3]}},
                             {"d5", {st::Category::kStandard, all[3]}}},
                            all);
  EXPECT_EQ(st::select_strategy(st::winning_frequency(results), all), all[3]);
  EXPECT_EQ(st::leave_one_out_strategy(results, "d3", all), all[3]);
  const auto shifted = grid({{"d1", {st::Category::kAdversarial, all[7]}},
                             {"d2", {st::Category::kAdversarial, all[7]}},
                             {"d3", {st::Category::kStandard, all[3]}}},
                            all);
  EXPECT_EQ(st::leave_one_out_strategy(shifted, "d3", all), all[7]);
}

TEST(Analyses, OverallAndPercentile) {
  const std::vector<double> acc = {0.8}, cor = {0.6};
  EXPECT_DOUBLE_EQ(st::overall_performance(acc, cor), 0.7);
  const std::vector<double> a5 = {0.9, 0.7, 0.5}, c5 = {0.3, 0.1};
  const std::vector<double> a5r = {0.5, 0.9, 0.7}, c5r = {0.1, 0.3};
  EXPECT_NEAR(st::overall_performance(a5, c5), 2.5 / 5, 1e-15);
  EXPECT_DOUBLE_EQ(st::overall_performance(a5, c5), st::overall_performance(a5r, c5r));
  const std::vector<double> none;
  EXPECT_EQ(code_of([&] { st::overall_performance(none, cor); }), ErrorCode::kEmptyInput);

  const std::vector<double> v = {1, 2, 3, 4, 5};
  const auto p = st::percentile_summary(v, 25, 75);
  EXPECT_DOUBLE_EQ(p.mean, 3);
  EXPECT_DOUBLE_EQ(p.lower, 2);
  EXPECT_DOUBLE_EQ(p.upper, 4);
  const auto q = st::percentile_summary(v, 10, 90);
  EXPECT_NEAR(q.lower, 1.4, 1e-15);
  EXPECT_NEAR(q.upper, 4.6, 1e-15);

  const std::vector<double> ens = {0.6, 0.7, 0.5};
  const auto g = st::ensemble_gain(ens, 0.5);
  EXPECT_NEAR(g.mean_improvement, 0.1, 1e-15);
  EXPECT_NEAR(g.max_improvement, 0.2, 1e-15);
}

TEST(Analyses, EditDistance) {
  menli::TestSuite suite;
  const auto add = [&](const std::string& id, const std::string& src, const std::string& para) {
    menli::AdversarialInstance inst;
    inst.id = id;
    inst.perturbation_source = src;
    inst.cand_para = para;
    suite.instances.push_back(inst);
  };
  add("a:x", "abcd", "abcd");  // distance 0
  add("b:x", "abcd", "abce");  // 0.25
  add("c:x", "abcd", "wxyz");  // 1
  const ScoreBatch para("m", {{"a:x", 1}, {"b:x", 1}, {"c:x", 0}});
  const ScoreBatch adv("m", {{"a:x", 0}, {"b:x", 0}, {"c:x", 1}});
  const auto r = st::edit_distance_analysis(suite, para, adv);
  EXPECT_EQ(r.successes, 2u);
  EXPECT_EQ(r.failures, 1u);
  EXPECT_DOUBLE_EQ(*r.mean_success, 0.125);
  EXPECT_DOUBLE_EQ(*r.mean_failure, 1.0);
  EXPECT_DOUBLE_EQ(*r.gap, 0.875);
  const ScoreBatch low("m", {{"a:x", 0}, {"b:x", 0}, {"c:x", -1}});
  const auto all_right = st::edit_distance_analysis(suite, para, low);
  EXPECT_FALSE(all_right.gap);
  EXPECT_FALSE(all_right.mean_failure);
}

}  // namespace
