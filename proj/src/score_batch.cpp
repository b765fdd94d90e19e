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

#include "menli/score_batch.hpp"

#include <algorithm>

#include "menli/error.hpp"

namespace menli {

ScoreBatch::ScoreBatch(std::string metric_id,
                       const std::map<std::string, double>& entries)
    : metric_id_(std::move(metric_id)) {
  ids_.reserve(entries.size());
  values_.resize(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& [id, value] : entries) {
    ids_.push_back(id);
    values_(i++) = value;
  }
}

std::optional<double> ScoreBatch::find(std::string_view id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return values_(it - ids_.begin());
}

double ScoreBatch::at(std::string_view id) const {
  const auto v = find(id);
  if (!v) {
    throw Error(ErrorCode::kCoverageGap,
                "metric '" + metric_id_ + "' has no score for '" + std::string(id) + "'");
  }
  return *v;
}

std::map<std::string, double> ScoreBatch::entries() const {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    out.emplace(ids_[i], values_(static_cast<Eigen::Index>(i)));
  }
  return out;
}

ScoreBatch ScoreBatch::with_values(Eigen::VectorXd values,
                                   std::optional<MinMax> normalization) const {
  if (values.size() != values_.size()) {
    throw Error(ErrorCode::kLengthMismatch, "value count does not match ids");
  }
  ScoreBatch out = *this;
  out.values_ = std::move(values);
  out.normalization_ = normalization;
  return out;
}

}  // namespace menli
