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

#include "menli/nli.hpp"

namespace menli::nli {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kForward: return "fwd";
    case Direction::kBackward: return "bwd";
    case Direction::kBi: return "bi";
  }
  return "bi";
}

std::string_view to_string(Formula f) {
  switch (f) {
    case Formula::kE: return "e";
    case Formula::kNegC: return "-c";
    case Formula::kEMinusN: return "e-n";
    case Formula::kEMinusC: return "e-c";
    case Formula::kEMinusN2C: return "e-n-2c";
  }
  return "e";
}

std::pair<double, double> formula_range(Formula f) {
  switch (f) {
    case Formula::kE: return {0.0, 1.0};
    case Formula::kNegC: return {-1.0, 0.0};
    case Formula::kEMinusN: return {-1.0, 1.0};
    case Formula::kEMinusC: return {-1.0, 1.0};
    case Formula::kEMinusN2C: return {-2.0, 1.0};
  }
  return {0.0, 0.0};
}

std::string PoolingStrategy::name() const {
  return std::string(to_string(direction)) + ":" + std::string(to_string(formula));
}

std::optional<PoolingStrategy> PoolingStrategy::parse(std::string_view name) {
  for (const auto& s : all_strategies()) {
    if (s.name() == name) return s;
  }
  return std::nullopt;
}

std::vector<PoolingStrategy> all_strategies() {
  std::vector<PoolingStrategy> out;
  for (Direction d : kAllDirections) {
    for (Formula f : kAllFormulas) out.push_back({d, f});
  }
  return out;
}

std::vector<PoolingStrategy> ref_free_summarization_strategies() {
  std::vector<PoolingStrategy> out;
  for (Formula f : kAllFormulas) out.push_back({Direction::kForward, f});
  return out;
}

double pool(const NliTriple& fwd, const std::optional<NliTriple>& bwd,
            PoolingStrategy strategy) {
  switch (strategy.direction) {
    case Direction::kForward:
      return apply_formula(fwd, strategy.formula);
    case Direction::kBackward:
      if (!bwd) throw Error(ErrorCode::kMissingDirection, "backward triple required");
      return apply_formula(*bwd, strategy.formula);
    case Direction::kBi:
      if (!bwd) throw Error(ErrorCode::kMissingDirection, "backward triple required");
      return apply_formula(NliTriple::average(fwd, *bwd), strategy.formula);
  }
  return 0.0;
}

std::pair<ScoreBatch, ScoreBatch> score_suite(
    const std::map<std::string, InstanceTriples>& triples,
    std::span<const std::string> expected_ids, PoolingStrategy strategy,
    const std::string& metric_id) {
  std::vector<std::string> missing;
  std::map<std::string, double> para;
  std::map<std::string, double> adv;
  for (const auto& id : expected_ids) {
    const auto it = triples.find(id);
    if (it == triples.end()) {
      missing.push_back(id);
      continue;
    }
    para[id] = pool(it->second.para_forward, it->second.para_backward, strategy);
    adv[id] = pool(it->second.adv_forward, it->second.adv_backward, strategy);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw Error(ErrorCode::kCoverageGap, "no triples for: " + list);
  }
  return {ScoreBatch(metric_id, para), ScoreBatch(metric_id, adv)};
}

}  // namespace menli::nli
