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

#ifndef MENLI_COMBINE_HPP_
#define MENLI_COMBINE_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "menli/score_batch.hpp"

namespace menli {

/// Affine map x -> (x - min) / (max - min). A constant input maps to 0.5.
template <typename Derived>
typename Derived::PlainObject min_max_scale(const Eigen::MatrixBase<Derived>& x,
                                            double min, double max) {
  using Plain = typename Derived::PlainObject;
  if (max == min) return Plain::Constant(x.rows(), x.cols(), 0.5);
  return ((x.array() - min) / (max - min)).matrix();
}

/// Rescales a batch to [0, 1] with its own min and max and records them.
/// Throws kEmptyBatch.
ScoreBatch min_max_normalize(const ScoreBatch& batch);

/// Applies a previously recorded (min, max) to new data, clamping to [0, 1].
/// Throws kDegenerateRange when max <= min.
ScoreBatch apply_stored_minmax(const ScoreBatch& batch, double min, double max);

struct CombinedBatch {
  std::string nli_metric_id;
  std::string base_metric_id;
  double w_nli = 0.0;
  ScoreBatch scores;
  // Ids present in only one of the inputs.
  std::vector<std::string> dropped_ids;
};

/// C = w * N + (1 - w) * M over the ids both batches share. Both inputs must
/// be normalized (kNotNormalized); an empty overlap is kEmptyIntersection.
CombinedBatch combine(const ScoreBatch& nli, const ScoreBatch& base, double w_nli);

struct SweepMetrics {
  double accuracy = 0.0;
  double correlation = 0.0;
};

struct SweepPoint {
  double w_nli = 0.0;
  double accuracy = 0.0;
  double correlation = 0.0;
};

/// 0.0, 0.1, ..., 1.0
std::vector<double> default_weight_grid();

/// Evaluates the combination at each weight. Weights outside [0, 1] are
/// kInvalidArgument; evaluator errors propagate.
std::vector<SweepPoint> sweep(
    const ScoreBatch& nli, const ScoreBatch& base, std::span<const double> weights,
    const std::function<SweepMetrics(const CombinedBatch&)>& evaluator);

}  // namespace menli

#endif  // MENLI_COMBINE_HPP_
