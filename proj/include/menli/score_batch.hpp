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

#ifndef MENLI_SCORE_BATCH_HPP_
#define MENLI_SCORE_BATCH_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace menli {

struct MinMax {
  double min = 0.0;
  double max = 0.0;
};

/// Scores of one metric keyed by instance id. Ids are kept sorted and
/// unique; values live in an Eigen vector aligned with ids().
class ScoreBatch {
 public:
  ScoreBatch() = default;
  explicit ScoreBatch(std::string metric_id) : metric_id_(std::move(metric_id)) {}
  ScoreBatch(std::string metric_id, const std::map<std::string, double>& entries);

  const std::string& metric_id() const { return metric_id_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  bool empty() const { return ids_.empty(); }

  std::optional<double> find(std::string_view id) const;
  /// Throws kCoverageGap when the id is absent.
  double at(std::string_view id) const;
  std::map<std::string, double> entries() const;

  /// Set once the batch has been min-max normalized.
  const std::optional<MinMax>& normalization() const { return normalization_; }
  bool normalized() const { return normalization_.has_value(); }

  /// Same ids, new values (size must match).
  ScoreBatch with_values(Eigen::VectorXd values,
                         std::optional<MinMax> normalization) const;

 private:
  std::string metric_id_;
  std::vector<std::string> ids_;
  Eigen::VectorXd values_;
  std::optional<MinMax> normalization_;
};

}  // namespace menli

#endif  // MENLI_SCORE_BATCH_HPP_
