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

#ifndef MENLI_ERROR_HPP_
#define MENLI_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace menli {

enum class ErrorCode {
  kEmptyInput,
  kUnsupported,
  kNotApplicable,
  kMissingParaphrase,
  kMissingField,
  kWrongArity,
  kInvalidTriple,
  kMissingDirection,
  kCoverageGap,
  kEmptyBatch,
  kDegenerateRange,
  kNotNormalized,
  kEmptyIntersection,
  kInvalidArgument,
  kIdMismatch,
  kConstantVector,
  kLengthMismatch,
  kAllTied,
  kEmptyJoin,
  kTooFewSystems,
  kEmptyList,
  kIncompleteGrid,
  kTooFewDatasets,
  kIoError,
  kParseError,
  kScorerFailed,
  kTimeout,
  kUnknownScorer,
  kUsage,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. The code identifies the
/// failure class so callers can branch on it (e.g. skip NotApplicable
/// perturbations) without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace menli

#endif  // MENLI_ERROR_HPP_
