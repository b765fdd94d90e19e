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

#ifndef MENLI_NLI_HPP_
#define MENLI_NLI_HPP_

#include <array>
#include <cmath>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "menli/error.hpp"
#include "menli/score_batch.hpp"

namespace menli::nli {

/// Triples summing to 1 within this tolerance are renormalized; anything
/// further off is rejected.
inline constexpr double kSumTolerance = 1e-4;

/// Entailment, contradiction and neutral probabilities, stored as the Eigen
/// vector (e, c, n).
template <typename Scalar>
class BasicTriple {
 public:
  using Vector = Eigen::Matrix<Scalar, 3, 1>;

  BasicTriple() : p_(Scalar(1), Scalar(0), Scalar(0)) {}

  /// Validates and renormalizes. Throws kInvalidTriple on negative entries,
  /// non-finite entries or a sum further than `tolerance` from 1.
  static BasicTriple make(Scalar e, Scalar c, Scalar n,
                          Scalar tolerance = Scalar(kSumTolerance)) {
    const Vector p(e, c, n);
    if (!p.allFinite() || (p.array() < Scalar(0)).any()) {
      throw Error(ErrorCode::kInvalidTriple, "probabilities must be finite and >= 0");
    }
    const Scalar sum = p.sum();
    if (std::abs(sum - Scalar(1)) > tolerance) {
      throw Error(ErrorCode::kInvalidTriple,
                  "e + c + n = " + std::to_string(static_cast<double>(sum)));
    }
    BasicTriple t;
    t.p_ = p / sum;
    return t;
  }

  Scalar e() const { return p_(0); }
  Scalar c() const { return p_(1); }
  Scalar n() const { return p_(2); }
  const Vector& probs() const { return p_; }

  /// Component-wise average of two directions.
  static BasicTriple average(const BasicTriple& a, const BasicTriple& b) {
    BasicTriple t;
    t.p_ = (a.p_ + b.p_) / Scalar(2);
    return t;
  }

 private:
  Vector p_;
};

using NliTriple = BasicTriple<double>;

/// ref/src -> cand, ref/src <- cand, and their average.
enum class Direction { kForward, kBackward, kBi };
enum class Formula { kE, kNegC, kEMinusN, kEMinusC, kEMinusN2C };

inline constexpr std::array<Direction, 3> kAllDirections = {
    Direction::kForward, Direction::kBackward, Direction::kBi};
inline constexpr std::array<Formula, 5> kAllFormulas = {
    Formula::kE, Formula::kNegC, Formula::kEMinusN, Formula::kEMinusC,
    Formula::kEMinusN2C};

std::string_view to_string(Direction d);
std::string_view to_string(Formula f);

/// Each formula is linear in (e, c, n); these are its coefficients.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 3, 1> formula_weights(Formula f) {
  using V = Eigen::Matrix<Scalar, 3, 1>;
  switch (f) {
    case Formula::kE: return V(1, 0, 0);
    case Formula::kNegC: return V(0, -1, 0);
    case Formula::kEMinusN: return V(1, 0, -1);
    case Formula::kEMinusC: return V(1, -1, 0);
    case Formula::kEMinusN2C: return V(1, -2, -1);
  }
  return V::Zero();
}

/// Attainable range of a formula over valid triples.
std::pair<double, double> formula_range(Formula f);

template <typename Scalar>
Scalar apply_formula(const BasicTriple<Scalar>& t, Formula f) {
  return formula_weights<Scalar>(f).dot(t.probs());
}

struct PoolingStrategy {
  Direction direction = Direction::kBi;
  Formula formula = Formula::kE;

  friend auto operator<=>(const PoolingStrategy&, const PoolingStrategy&) = default;

  /// "bi:e", "fwd:e-n-2c", ...
  std::string name() const;
  static std::optional<PoolingStrategy> parse(std::string_view name);
};

/// All 15 strategies, ordered by (direction, formula).
std::vector<PoolingStrategy> all_strategies();
/// The 5 forward-only strategies used for ref-free summarization.
std::vector<PoolingStrategy> ref_free_summarization_strategies();

/// Throws kMissingDirection when the strategy needs `bwd` and it is absent.
double pool(const NliTriple& fwd, const std::optional<NliTriple>& bwd,
            PoolingStrategy strategy);

/// Row-wise pooling of N x 3 (e, c, n) matrices. `bwd` may be empty for
/// forward-only strategies.
template <typename DerivedF, typename DerivedB>
Eigen::VectorXd pool_rows(const Eigen::MatrixBase<DerivedF>& fwd,
                          const Eigen::MatrixBase<DerivedB>& bwd,
                          PoolingStrategy strategy) {
  const Eigen::Vector3d w = formula_weights<double>(strategy.formula);
  switch (strategy.direction) {
    case Direction::kForward:
      return fwd * w;
    case Direction::kBackward:
      if (bwd.rows() != fwd.rows()) {
        throw Error(ErrorCode::kMissingDirection, "backward triples required");
      }
      return bwd * w;
    case Direction::kBi:
      if (bwd.rows() != fwd.rows()) {
        throw Error(ErrorCode::kMissingDirection, "backward triples required");
      }
      return ((fwd + bwd) / 2.0) * w;
  }
  return Eigen::VectorXd();
}

/// Triples for both candidates of one adversarial instance.
struct InstanceTriples {
  NliTriple para_forward;
  std::optional<NliTriple> para_backward;
  NliTriple adv_forward;
  std::optional<NliTriple> adv_backward;
};

/// Pools every instance; throws kCoverageGap listing ids in `expected_ids`
/// that have no triples.
std::pair<ScoreBatch, ScoreBatch> score_suite(
    const std::map<std::string, InstanceTriples>& triples,
    std::span<const std::string> expected_ids, PoolingStrategy strategy,
    const std::string& metric_id = "nli");

}  // namespace menli::nli

#endif  // MENLI_NLI_HPP_
