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

#ifndef MENLI_TEXTOPS_HPP_
#define MENLI_TEXTOPS_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace menli {

/// All randomness in the library flows through an explicitly passed engine.
using Rng = std::mt19937_64;

namespace text {

enum class TokenKind { kWord, kNumber, kPunctuation };
enum class Pos { kNoun, kVerb, kAdjective, kPronoun, kOther };

std::string_view to_string(TokenKind kind);
std::string_view to_string(Pos pos);

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::kWord;
  Pos pos = Pos::kOther;
  // Byte offsets into the source, half-open.
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct TokenizedSentence {
  std::string source;
  std::vector<Token> tokens;

  /// Whitespace between token i-1 and token i (leading whitespace for i=0,
  /// trailing whitespace for i=size()).
  std::string_view gap_before(std::size_t i) const;

  /// Rebuilds the text from surfaces and recorded gaps; always equals source.
  std::string detokenize() const;

  /// Tokens that are not punctuation.
  std::size_t word_count() const;
};

/// Lower-cased word -> part of speech.
using PosDictionary = std::unordered_map<std::string, Pos>;

/// Whitespace + punctuation tokenizer with lossless offsets. Part-of-speech
/// comes from `tags` when given (one per token), else from `dict`, else
/// kOther. Throws kEmptyInput for whitespace-only text.
TokenizedSentence tokenize(std::string_view text,
                           const PosDictionary* dict = nullptr,
                           std::span<const Pos> tags = {});

/// Optional sign, digits with optional comma thousands groups, optional
/// single decimal part.
bool is_numeric_literal(std::string_view s);

std::string to_lower(std::string_view s);

/// Restores leading capitalization of `like` onto `word` (ASCII only).
std::string match_case(std::string_view word, std::string_view like);

/// Character (code point) level edit distance.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// levenshtein / max(len a, len b) in code points; 0 when both are empty.
double levenshtein_normalized(std::string_view a, std::string_view b);

/// Single-reference sentence BLEU over all tokens, n = 1..4, add-one
/// smoothing for n >= 2 and the usual brevity penalty.
double sentence_bleu(std::string_view candidate, std::string_view reference);

/// LCS F1 over lower-cased non-punctuation tokens.
double rouge_l_f1(std::string_view candidate, std::string_view reference);

/// "100" -> "one hundred", "5.3" -> "five point three". Throws kUnsupported
/// for malformed literals or magnitudes >= 10^12.
std::string number_to_words(std::string_view literal);

/// Draws a different number with the same shape: integer vs decimal, digit
/// count, decimal places, sign and comma grouping are kept.
std::string random_number_same_format(std::string_view literal, Rng& rng);

/// Decodes UTF-8 into code points; invalid bytes map to themselves.
std::vector<char32_t> decode_utf8(std::string_view s);

/// Stable 64-bit FNV-1a, used wherever a hash must survive across runs.
std::uint64_t fnv1a(std::string_view s, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace text
}  // namespace menli

#endif  // MENLI_TEXTOPS_HPP_
