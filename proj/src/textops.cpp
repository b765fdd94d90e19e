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

#include "menli/textops.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>

#include "menli/error.hpp"

namespace menli::text {
namespace {

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads one UTF-8 code point at `i`; returns its byte length.
std::size_t utf8_length(std::string_view s, std::size_t i, char32_t* cp) {
  const auto c0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  char32_t value = c0;
  if (c0 >= 0xF0) {
    len = 4;
    value = c0 & 0x07;
  } else if (c0 >= 0xE0) {
    len = 3;
    value = c0 & 0x0F;
  } else if (c0 >= 0xC0) {
    len = 2;
    value = c0 & 0x1F;
  }
  if (i + len > s.size()) len = 1;
  if (len == 1) {
    *cp = c0;
    return 1;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto ck = static_cast<unsigned char>(s[i + k]);
    if ((ck & 0xC0) != 0x80) {
      *cp = c0;
      return 1;
    }
    value = (value << 6) | (ck & 0x3F);
  }
  *cp = value;
  return len;
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  return (cp >= 0xA1 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 ||
         (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x20A0 && cp <= 0x20CF) ||
         (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFF01 && cp <= 0xFF0F);
}

bool is_word_cp(char32_t cp) {
  if (cp < 0x80) return std::isalnum(static_cast<int>(cp)) != 0;
  return !is_punct_cp(cp) && cp != 0xA0;
}

bool word_cp_at(std::string_view s, std::size_t i) {
  if (i >= s.size()) return false;
  char32_t cp = 0;
  utf8_length(s, i, &cp);
  return is_word_cp(cp);
}

// Longest numeric-grammar match starting at `i` (0 if none).
std::size_t match_number(std::string_view s, std::size_t i) {
  std::size_t j = i;
  if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
  const std::size_t digits_begin = j;
  while (j < s.size() && is_digit(s[j])) ++j;
  const std::size_t lead = j - digits_begin;
  if (lead == 0) return 0;
  if (lead <= 3) {
    while (j + 3 < s.size() + 0 && s[j] == ',' && is_digit(s[j + 1]) &&
           is_digit(s[j + 2]) && is_digit(s[j + 3]) &&
           (j + 4 >= s.size() || !is_digit(s[j + 4]))) {
      j += 4;
    }
  }
  if (j + 1 < s.size() && s[j] == '.' && is_digit(s[j + 1])) {
    ++j;
    while (j < s.size() && is_digit(s[j])) ++j;
  }
  return j - i;
}

std::vector<std::string> surfaces(const TokenizedSentence& s,
                                  bool lower_words_only) {
  std::vector<std::string> out;
  out.reserve(s.tokens.size());
  for (const auto& t : s.tokens) {
    if (lower_words_only) {
      if (t.kind == TokenKind::kPunctuation) continue;
      out.push_back(to_lower(t.surface));
    } else {
      out.push_back(t.surface);
    }
  }
  return out;
}

constexpr std::array<const char*, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",
    "five",    "six",     "seven",     "eight",    "nine",
    "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
    "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
constexpr std::array<const char*, 10> kTens = {
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
    "eighty", "ninety"};

std::string below_thousand(int n) {
  std::string out;
  if (n >= 100) {
    out = std::string(kOnes[n / 100]) + " hundred";
    n %= 100;
    if (n == 0) return out;
    out += ' ';
  }
  if (n < 20) return out + kOnes[n];
  out += kTens[n / 10];
  if (n % 10 != 0) out += std::string("-") + kOnes[n % 10];
  return out;
}

struct NumberShape {
  bool negative = false;
  bool has_sign = false;
  bool commas = false;
  std::string int_digits;
  std::string frac_digits;
  bool decimal = false;
};

NumberShape parse_shape(std::string_view literal) {
  if (!is_numeric_literal(literal)) {
    throw Error(ErrorCode::kUnsupported,
                "malformed numeric literal '" + std::string(literal) + "'");
  }
  NumberShape shape;
  std::size_t i = 0;
  if (literal[0] == '+' || literal[0] == '-') {
    shape.has_sign = true;
    shape.negative = literal[0] == '-';
    i = 1;
  }
  for (; i < literal.size() && literal[i] != '.'; ++i) {
    if (literal[i] == ',') {
      shape.commas = true;
    } else {
      shape.int_digits += literal[i];
    }
  }
  if (i < literal.size()) {
    shape.decimal = true;
    shape.frac_digits = std::string(literal.substr(i + 1));
  }
  return shape;
}

std::string group_thousands(const std::string& digits) {
  std::string out;
  const std::size_t n = digits.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && (n - k) % 3 == 0) out += ',';
    out += digits[k];
  }
  return out;
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kNumber: return "number";
    case TokenKind::kPunctuation: return "punctuation";
  }
  return "word";
}

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "noun";
    case Pos::kVerb: return "verb";
    case Pos::kAdjective: return "adjective";
    case Pos::kPronoun: return "pronoun";
    case Pos::kOther: return "other";
  }
  return "other";
}

std::string_view TokenizedSentence::gap_before(std::size_t i) const {
  const std::size_t from = i == 0 ? 0 : tokens[i - 1].end;
  const std::size_t to = i < tokens.size() ? tokens[i].begin : source.size();
  return std::string_view(source).substr(from, to - from);
}

std::string TokenizedSentence::detokenize() const {
  std::string out;
  out.reserve(source.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out += gap_before(i);
    out += tokens[i].surface;
  }
  out += gap_before(tokens.size());
  return out;
}

std::size_t TokenizedSentence::word_count() const {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const Token& t) {
        return t.kind != TokenKind::kPunctuation;
      }));
}

TokenizedSentence tokenize(std::string_view text, const PosDictionary* dict,
                           std::span<const Pos> tags) {
  TokenizedSentence out;
  out.source = std::string(text);
  const std::string_view s = out.source;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    Token token;
    token.begin = i;
    const bool sign_ok =
        (c == '+' || c == '-') && (i == 0 || is_space(s[i - 1]) ||
                                   s[i - 1] == '(' || s[i - 1] == '$');
    std::size_t num_len = 0;
    if (is_digit(s[i]) || sign_ok) num_len = match_number(s, i);
    if (num_len > 0 && !word_cp_at(s, i + num_len)) {
      token.kind = TokenKind::kNumber;
      i += num_len;
    } else {
      char32_t cp = 0;
      std::size_t len = utf8_length(s, i, &cp);
      if (!is_word_cp(cp)) {
        token.kind = TokenKind::kPunctuation;
        i += len;
      } else {
        token.kind = TokenKind::kWord;
        i += len;
        while (i < s.size()) {
          len = utf8_length(s, i, &cp);
          if (is_word_cp(cp)) {
            i += len;
          } else if ((s[i] == '\'' || s[i] == '-') && word_cp_at(s, i + 1)) {
            i += 1;
          } else {
            break;
          }
        }
      }
    }
    token.end = i;
    token.surface = std::string(s.substr(token.begin, token.end - token.begin));
    out.tokens.push_back(std::move(token));
  }
  if (out.tokens.empty()) {
    throw Error(ErrorCode::kEmptyInput, "text is empty or whitespace-only");
  }
  if (!tags.empty() && tags.size() != out.tokens.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "got " + std::to_string(tags.size()) + " POS tags for " +
                    std::to_string(out.tokens.size()) + " tokens");
  }
  for (std::size_t k = 0; k < out.tokens.size(); ++k) {
    auto& t = out.tokens[k];
    if (!tags.empty()) {
      t.pos = tags[k];
    } else if (dict != nullptr && t.kind == TokenKind::kWord) {
      const auto it = dict->find(to_lower(t.surface));
      if (it != dict->end()) t.pos = it->second;
    }
  }
  return out;
}

bool is_numeric_literal(std::string_view s) {
  return !s.empty() && match_number(s, 0) == s.size();
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

std::string match_case(std::string_view word, std::string_view like) {
  std::string out(word);
  if (!out.empty() && !like.empty() &&
      std::isupper(static_cast<unsigned char>(like[0]))) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t cp = 0;
    i += utf8_length(s, i, &cp);
    out.push_back(cp);
  }
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const auto x = decode_utf8(a);
  const auto y = decode_utf8(b);
  std::vector<std::size_t> prev(y.size() + 1);
  std::vector<std::size_t> cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

double levenshtein_normalized(std::string_view a, std::string_view b) {
  const std::size_t la = decode_utf8(a).size();
  const std::size_t lb = decode_utf8(b).size();
  const std::size_t longest = std::max(la, lb);
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) /
         static_cast<double>(longest);
}

double sentence_bleu(std::string_view candidate, std::string_view reference) {
  const auto cand = surfaces(tokenize(candidate), false);
  const auto ref = surfaces(tokenize(reference), false);
  constexpr std::size_t kMaxOrder = 4;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= kMaxOrder; ++n) {
    std::map<std::vector<std::string>, std::size_t> ref_counts;
    for (std::size_t i = 0; i + n <= ref.size(); ++i) {
      ++ref_counts[{ref.begin() + i, ref.begin() + i + n}];
    }
    std::map<std::vector<std::string>, std::size_t> cand_counts;
    for (std::size_t i = 0; i + n <= cand.size(); ++i) {
      ++cand_counts[{cand.begin() + i, cand.begin() + i + n}];
    }
    std::size_t matches = 0;
    std::size_t total = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matches += std::min(count, it->second);
    }
    double precision = 0.0;
    if (n == 1) {
      if (matches == 0) return 0.0;
      precision = static_cast<double>(matches) / static_cast<double>(total);
    } else {
      precision = (static_cast<double>(matches) + 1.0) /
                  (static_cast<double>(total) + 1.0);
    }
    log_sum += std::log(precision);
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
  return brevity * std::exp(log_sum / static_cast<double>(kMaxOrder));
}

double rouge_l_f1(std::string_view candidate, std::string_view reference) {
  const auto cand = surfaces(tokenize(candidate), true);
  const auto ref = surfaces(tokenize(reference), true);
  if (cand.empty() || ref.empty()) {
    throw Error(ErrorCode::kEmptyInput, "ROUGE-L needs at least one word");
  }
  std::vector<std::size_t> prev(ref.size() + 1, 0);
  std::vector<std::size_t> cur(ref.size() + 1, 0);
  for (std::size_t i = 1; i <= cand.size(); ++i) {
    for (std::size_t j = 1; j <= ref.size(); ++j) {
      cur[j] = cand[i - 1] == ref[j - 1] ? prev[j - 1] + 1
                                         : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  const double lcs = static_cast<double>(prev[ref.size()]);
  if (lcs == 0.0) return 0.0;
  const double p = lcs / static_cast<double>(cand.size());
  const double r = lcs / static_cast<double>(ref.size());
  return 2.0 * p * r / (p + r);
}

std::string number_to_words(std::string_view literal) {
  const NumberShape shape = parse_shape(literal);
  std::string digits = shape.int_digits;
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  if (digits.size() > 12) {
    throw Error(ErrorCode::kUnsupported,
                "magnitude too large to verbalize: " + std::string(literal));
  }
  long long value = std::stoll(digits);
  if (value >= 1'000'000'000'000LL) {
    throw Error(ErrorCode::kUnsupported,
                "magnitude too large to verbalize: " + std::string(literal));
  }
  std::string out;
  if (value == 0) {
    out = "zero";
  } else {
    constexpr std::array<std::pair<long long, const char*>, 3> kScales = {{
        {1'000'000'000LL, "billion"},
        {1'000'000LL, "million"},
        {1'000LL, "thousand"},
    }};
    for (const auto& [scale, name] : kScales) {
      if (value >= scale) {
        if (!out.empty()) out += ' ';
        out += below_thousand(static_cast<int>(value / scale));
        out += ' ';
        out += name;
        value %= scale;
      }
    }
    if (value > 0) {
      if (!out.empty()) out += ' ';
      out += below_thousand(static_cast<int>(value));
    }
  }
  if (shape.decimal) {
    out += " point";
    for (char d : shape.frac_digits) {
      out += ' ';
      out += kOnes[d - '0'];
    }
  }
  if (shape.negative) out = "minus " + out;
  return out;
}

std::string random_number_same_format(std::string_view literal, Rng& rng) {
  const NumberShape shape = parse_shape(literal);
  std::uniform_int_distribution<int> any_digit(0, 9);
  std::uniform_int_distribution<int> lead_digit(1, 9);
  std::string int_digits;
  std::string frac_digits;
  do {
    int_digits.clear();
    frac_digits.clear();
    for (std::size_t k = 0; k < shape.int_digits.size(); ++k) {
      const bool lead = k == 0 && shape.int_digits.size() > 1;
      int_digits += static_cast<char>('0' + (lead ? lead_digit(rng)
                                                  : any_digit(rng)));
    }
    for (std::size_t k = 0; k < shape.frac_digits.size(); ++k) {
      frac_digits += static_cast<char>('0' + any_digit(rng));
    }
  } while (int_digits == shape.int_digits && frac_digits == shape.frac_digits);
  std::string out;
  if (shape.has_sign) out += shape.negative ? '-' : '+';
  out += shape.commas ? group_thousands(int_digits) : int_digits;
  if (shape.decimal) out += "." + frac_digits;
  return out;
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace menli::text
