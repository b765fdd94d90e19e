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

#include "menli/error.hpp"

namespace menli {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kMissingParaphrase: return "MissingParaphrase";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kWrongArity: return "WrongArity";
    case ErrorCode::kInvalidTriple: return "InvalidTriple";
    case ErrorCode::kMissingDirection: return "MissingDirection";
    case ErrorCode::kCoverageGap: return "CoverageGap";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kDegenerateRange: return "DegenerateRange";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kEmptyIntersection: return "EmptyIntersection";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIdMismatch: return "IdMismatch";
    case ErrorCode::kConstantVector: return "ConstantVector";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kAllTied: return "AllTied";
    case ErrorCode::kEmptyJoin: return "EmptyJoin";
    case ErrorCode::kTooFewSystems: return "TooFewSystems";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kIncompleteGrid: return "IncompleteGrid";
    case ErrorCode::kTooFewDatasets: return "TooFewDatasets";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kScorerFailed: return "ScorerFailed";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kUnknownScorer: return "UnknownScorer";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

}  // namespace menli
