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

#ifndef MENLI_CORRELATION_HPP_
#define MENLI_CORRELATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <Eigen/Dense>

#include "menli/error.hpp"

// Correlation coefficients over Eigen vectors. Fixed-size inputs stay on the
// stack; dynamic inputs allocate their scratch buffers once per call.

namespace menli::stats {

namespace internal {

// Below this length, pairwise counting beats sorting.
inline constexpr Eigen::Index kDirectCountMax = 8;

template <typename DX, typename DY>
void check_lengths(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "vectors of length " + std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::kLengthMismatch, "need at least 2 observations");
  }
}

template <typename Derived>
bool is_constant(const Eigen::MatrixBase<Derived>& x) {
  return (x.array() == x.coeff(0)).all();
}

template <typename Derived>
using IndexVector = Eigen::Matrix<Eigen::Index, Derived::SizeAtCompileTime, 1, 0,
                                  Derived::MaxSizeAtCompileTime, 1>;

template <typename Derived>
using RealVector = Eigen::Matrix<double, Derived::SizeAtCompileTime, 1, 0,
                                 Derived::MaxSizeAtCompileTime, 1>;

// Counts pairs i < j with v[i] > v[j] while merge-sorting v in place.
// Short runs use insertion sort, where every shift is one inversion.
template <typename Vec>
std::int64_t sort_and_count_inversions(Vec& v, Vec& scratch, Eigen::Index lo,
                                       Eigen::Index hi) {
  if (hi - lo <= 16) {
    std::int64_t count = 0;
    for (Eigen::Index i = lo + 1; i < hi; ++i) {
      const auto key = v(i);
      Eigen::Index j = i;
      while (j > lo && key < v(j - 1)) {
        v(j) = v(j - 1);
        --j;
      }
      count += i - j;
      v(j) = key;
    }
    return count;
  }
  const Eigen::Index mid = lo + (hi - lo) / 2;
  std::int64_t count = sort_and_count_inversions(v, scratch, lo, mid) +
                       sort_and_count_inversions(v, scratch, mid, hi);
  Eigen::Index i = lo;
  Eigen::Index j = mid;
  Eigen::Index k = lo;
  while (i < mid && j < hi) {
    if (v(j) < v(i)) {
      scratch(k++) = v(j++);
      count += mid - i;
    } else {
      scratch(k++) = v(i++);
    }
  }
  while (i < mid) scratch(k++) = v(i++);
  while (j < hi) scratch(k++) = v(j++);
  for (Eigen::Index t = lo; t < hi; ++t) v(t) = scratch(t);
  return count;
}

// Sum over runs of equal values (in sorted order) of t * (t - 1) / 2.
template <typename Vec, typename Eq>
std::int64_t tied_pairs(const Vec& order, Eq&& equal) {
  std::int64_t total = 0;
  Eigen::Index run = 1;
  for (Eigen::Index i = 1; i < order.size(); ++i) {
    if (equal(order(i - 1), order(i))) {
      ++run;
    } else {
      total += static_cast<std::int64_t>(run) * (run - 1) / 2;
      run = 1;
    }
  }
  return total + static_cast<std::int64_t>(run) * (run - 1) / 2;
}

}  // namespace internal

/// Sample Pearson correlation. Throws kLengthMismatch and kConstantVector.
template <typename DX, typename DY>
double pearson(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  internal::check_lengths(x, y);
  if (internal::is_constant(x) || internal::is_constant(y)) {
    throw Error(ErrorCode::kConstantVector, "correlation with a constant vector");
  }
  using Vec = internal::RealVector<DX>;
  const Vec xd = x.template cast<double>();
  const Vec yd = y.template cast<double>();
  const Vec xc = xd.array() - xd.mean();
  const Vec yc = yd.array() - yd.mean();
  const double r = xc.dot(yc) / std::sqrt(xc.squaredNorm() * yc.squaredNorm());
  return std::clamp(r, -1.0, 1.0);
}

/// Fractional ranks (1-based); tied values share the average of their ranks.
template <typename Derived>
internal::RealVector<Derived> fractional_ranks(const Eigen::MatrixBase<Derived>& x) {
  using Idx = internal::IndexVector<Derived>;
  const Eigen::Index n = x.size();
  internal::RealVector<Derived> ranks(n);
  if (n <= internal::kDirectCountMax) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index less = 0;
      Eigen::Index equal = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        less += x.coeff(j) < x.coeff(i);
        equal += x.coeff(j) == x.coeff(i);
      }
      ranks(i) = static_cast<double>(less) + 0.5 * static_cast<double>(equal + 1);
    }
    return ranks;
  }
  Idx order(n);
  std::iota(order.data(), order.data() + n, Eigen::Index{0});
  std::sort(order.data(), order.data() + n, [&](Eigen::Index a, Eigen::Index b) {
    return x.coeff(a) < x.coeff(b) || (x.coeff(a) == x.coeff(b) && a < b);
  });
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && x.coeff(order(j + 1)) == x.coeff(order(i))) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index k = i; k <= j; ++k) ranks(order(k)) = avg;
    i = j + 1;
  }
  return ranks;
}

/// Pearson correlation of fractional ranks.
template <typename DX, typename DY>
double spearman(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  internal::check_lengths(x, y);
  return pearson(fractional_ranks(x), fractional_ranks(y));
}

/// Kendall tau-b; O(n log n) by Knight's algorithm except for short inputs.
/// Throws kAllTied when either vector is constant.
template <typename DX, typename DY>
double kendall(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  internal::check_lengths(x, y);
  const Eigen::Index n = x.size();
  if (n <= internal::kDirectCountMax) {
    std::int64_t score = 0;
    std::int64_t untied_x = 0;
    std::int64_t untied_y = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const int sx = (x.coeff(i) < x.coeff(j)) - (x.coeff(j) < x.coeff(i));
        const int sy = (y.coeff(i) < y.coeff(j)) - (y.coeff(j) < y.coeff(i));
        score += sx * sy;
        untied_x += sx != 0;
        untied_y += sy != 0;
      }
    }
    if (untied_x == 0 || untied_y == 0) {
      throw Error(ErrorCode::kAllTied, "Kendall tau with a constant vector");
    }
    return static_cast<double>(score) /
           std::sqrt(static_cast<double>(untied_x) * static_cast<double>(untied_y));
  }
  using Idx = internal::IndexVector<DX>;
  using Vec = internal::RealVector<DX>;
  Idx order(n);
  std::iota(order.data(), order.data() + n, Eigen::Index{0});
  std::sort(order.data(), order.data() + n, [&](Eigen::Index a, Eigen::Index b) {
    if (x.coeff(a) != x.coeff(b)) return x.coeff(a) < x.coeff(b);
    return y.coeff(a) < y.coeff(b);
  });
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const std::int64_t x_ties = internal::tied_pairs(
      order, [&](Eigen::Index a, Eigen::Index b) { return x.coeff(a) == x.coeff(b); });
  const std::int64_t joint_ties =
      internal::tied_pairs(order, [&](Eigen::Index a, Eigen::Index b) {
        return x.coeff(a) == x.coeff(b) && y.coeff(a) == y.coeff(b);
      });
  Vec ys(n);
  for (Eigen::Index i = 0; i < n; ++i) ys(i) = static_cast<double>(y.coeff(order(i)));
  Vec scratch(n);
  const std::int64_t swaps = internal::sort_and_count_inversions(ys, scratch, 0, n);
  const std::int64_t y_ties =
      internal::tied_pairs(ys, [](double a, double b) { return a == b; });
  const std::int64_t untied_x = pairs - x_ties;
  const std::int64_t untied_y = pairs - y_ties;
  if (untied_x == 0 || untied_y == 0) {
    throw Error(ErrorCode::kAllTied, "Kendall tau with a constant vector");
  }
  // concordant - discordant
  const std::int64_t numerator = pairs - x_ties - y_ties + joint_ties - 2 * swaps;
  return static_cast<double>(numerator) /
         std::sqrt(static_cast<double>(untied_x) * static_cast<double>(untied_y));
}

}  // namespace menli::stats

#endif  // MENLI_CORRELATION_HPP_
