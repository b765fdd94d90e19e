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

// Slow, definitional reference implementations used to check the library.
// Nothing here shares code with src/.

#ifndef MENLI_TESTS_ORACLES_HPP_
#define MENLI_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Full-matrix edit distance over bytes (callers pass ASCII).
inline std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

inline std::size_t count_ngram(const std::vector<std::string>& toks,
                               const std::vector<std::string>& gram) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + gram.size() <= toks.size(); ++i) {
    if (std::equal(gram.begin(), gram.end(), toks.begin() + static_cast<long>(i))) ++count;
  }
  return count;
}

// BLEU-4 on whitespace tokens: clipped precisions, add-one for n >= 2,
// zero if nothing matches at n = 1, brevity penalty when shorter.
inline double bleu(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t matched = 0;
    std::size_t total = cand.size() >= n ? cand.size() - n + 1 : 0;
    for (std::size_t i = 0; i + n <= cand.size(); ++i) {
      const std::vector<std::string> gram(cand.begin() + static_cast<long>(i),
                                          cand.begin() + static_cast<long>(i + n));
      // Count each distinct n-gram once, at its first occurrence.
      bool seen = false;
      for (std::size_t k = 0; k < i && !seen; ++k) {
        seen = std::equal(gram.begin(), gram.end(), cand.begin() + static_cast<long>(k));
      }
      if (!seen) matched += std::min(count_ngram(cand, gram), count_ngram(ref, gram));
    }
    double p;
    if (n == 1) {
      if (matched == 0) return 0.0;
      p = static_cast<double>(matched) / static_cast<double>(total);
    } else {
      p = (static_cast<double>(matched) + 1.0) / (static_cast<double>(total) + 1.0);
    }
    log_sum += std::log(p);
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  return (c < r ? std::exp(1.0 - r / c) : 1.0) * std::exp(log_sum / 4.0);
}

inline bool is_subsequence(const std::vector<std::string>& sub,
                           const std::vector<std::string>& seq) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < seq.size() && j < sub.size(); ++i) {
    if (seq[i] == sub[j]) ++j;
  }
  return j == sub.size();
}

// LCS by enumerating every subsequence of the candidate.
inline std::size_t lcs_by_enumeration(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
    std::vector<std::string> sub;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask & (1u << i)) sub.push_back(a[i]);
    }
    if (sub.size() > best && is_subsequence(sub, b)) best = sub.size();
  }
  return best;
}

inline double rouge_l(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
  const double lcs = static_cast<double>(lcs_by_enumeration(cand, ref));
  if (lcs == 0) return 0.0;
  const double p = lcs / static_cast<double>(cand.size());
  const double r = lcs / static_cast<double>(ref.size());
  return 2 * p * r / (p + r);
}

// Pearson from raw integer moments; nullopt for a constant side.
inline std::optional<double> pearson(const std::vector<long long>& x,
                                     const std::vector<long long>& y) {
  const long long n = static_cast<long long>(x.size());
  long long sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  const long long vx = n * sxx - sx * sx;
  const long long vy = n * syy - sy * sy;
  if (vx == 0 || vy == 0) return std::nullopt;
  return static_cast<double>(n * sxy - sx * sy) /
         std::sqrt(static_cast<double>(vx) * static_cast<double>(vy));
}

inline std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / n, my = sy / n;
  long double cxy = 0, cxx = 0, cyy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cxy += (x[i] - mx) * (y[i] - my);
    cxx += (x[i] - mx) * (x[i] - mx);
    cyy += (y[i] - my) * (y[i] - my);
  }
  if (cxx == 0 || cyy == 0) return std::nullopt;
  return static_cast<double>(cxy / std::sqrt(cxx * cyy));
}

// Twice the average rank, so ties stay integral: 2 * (#less) + #equal + 1.
template <typename T>
std::vector<long long> doubled_ranks(const std::vector<T>& x) {
  std::vector<long long> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    long long less = 0, equal = 0;
    for (const T& v : x) {
      if (v < x[i]) ++less;
      if (v == x[i]) ++equal;
    }
    out[i] = 2 * less + equal + 1;
  }
  return out;
}

template <typename T>
std::optional<double> spearman(const std::vector<T>& x, const std::vector<T>& y) {
  return pearson(doubled_ranks(x), doubled_ranks(y));
}

// Tau-b by looking at every pair.
template <typename T>
std::optional<double> kendall(const std::vector<T>& x, const std::vector<T>& y) {
  long long concordant = 0, discordant = 0, tx = 0, ty = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool xt = x[i] == x[j];
      const bool yt = y[i] == y[j];
      if (xt && yt) continue;
      if (xt) {
        ++tx;
      } else if (yt) {
        ++ty;
      } else if ((x[i] < x[j]) == (y[i] < y[j])) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const long long a = concordant + discordant + tx;
  const long long b = concordant + discordant + ty;
  if (a == 0 || b == 0) return std::nullopt;
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(a) * static_cast<double>(b));
}

}  // namespace oracle

#endif  // MENLI_TESTS_ORACLES_HPP_
