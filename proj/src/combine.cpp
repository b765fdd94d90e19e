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

#include "menli/combine.hpp"

#include <algorithm>

#include "menli/error.hpp"

namespace menli {

ScoreBatch min_max_normalize(const ScoreBatch& batch) {
  if (batch.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "cannot normalize empty batch '" +
                                            batch.metric_id() + "'");
  }
  const double lo = batch.values().minCoeff();
  const double hi = batch.values().maxCoeff();
  return batch.with_values(min_max_scale(batch.values(), lo, hi), MinMax{lo, hi});
}

ScoreBatch apply_stored_minmax(const ScoreBatch& batch, double min, double max) {
  if (!(max > min)) {
    throw Error(ErrorCode::kDegenerateRange, "stored range needs max > min");
  }
  Eigen::VectorXd scaled = min_max_scale(batch.values(), min, max);
  return batch.with_values(scaled.cwiseMax(0.0).cwiseMin(1.0), MinMax{min, max});
}

CombinedBatch combine(const ScoreBatch& nli, const ScoreBatch& base, double w_nli) {
  if (!nli.normalized() || !base.normalized()) {
    throw Error(ErrorCode::kNotNormalized,
                "combine expects min-max normalized inputs");
  }
  if (!(w_nli >= 0.0 && w_nli <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "w_nli must lie in [0, 1]");
  }
  CombinedBatch out;
  out.nli_metric_id = nli.metric_id();
  out.base_metric_id = base.metric_id();
  out.w_nli = w_nli;

  // Both id lists are sorted: merge-join.
  const auto& a = nli.ids();
  const auto& b = base.ids();
  std::vector<std::string> shared;
  std::vector<Eigen::Index> ia;
  std::vector<Eigen::Index> ib;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.dropped_ids.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      out.dropped_ids.push_back(b[j++]);
    } else {
      shared.push_back(a[i]);
      ia.push_back(static_cast<Eigen::Index>(i++));
      ib.push_back(static_cast<Eigen::Index>(j++));
    }
  }
  if (shared.empty()) {
    throw Error(ErrorCode::kEmptyIntersection, "'" + nli.metric_id() + "' and '" +
                                                   base.metric_id() + "' share no ids");
  }
  const Eigen::VectorXd n = nli.values()(ia);
  const Eigen::VectorXd m = base.values()(ib);
  const Eigen::VectorXd c = w_nli * n + (1.0 - w_nli) * m;
  std::map<std::string, double> entries;
  for (std::size_t k = 0; k < shared.size(); ++k) {
    entries.emplace(shared[k], c(static_cast<Eigen::Index>(k)));
  }
  out.scores = ScoreBatch(nli.metric_id() + "+" + base.metric_id(), entries);
  return out;
}

std::vector<double> default_weight_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(static_cast<double>(k) / 10.0);
  return grid;
}

std::vector<SweepPoint> sweep(
    const ScoreBatch& nli, const ScoreBatch& base, std::span<const double> weights,
    const std::function<SweepMetrics(const CombinedBatch&)>& evaluator) {
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "sweep weights must lie in [0, 1]");
    }
  }
  std::vector<SweepPoint> curve;
  curve.reserve(weights.size());
  for (double w : weights) {
    const auto metrics = evaluator(combine(nli, base, w));
    curve.push_back({w, metrics.accuracy, metrics.correlation});
  }
  return curve;
}

}  // namespace menli
