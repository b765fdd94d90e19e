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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "menli/error.hpp"
#include "menli/textops.hpp"
#include "oracles.hpp"

namespace menli::text {
namespace {

using Kinds = std::vector<TokenKind>;
constexpr auto W = TokenKind::kWord;
constexpr auto N = TokenKind::kNumber;
constexpr auto P = TokenKind::kPunctuation;

std::vector<std::string> surfaces(const TokenizedSentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.surface);
  return out;
}

Kinds kinds(const TokenizedSentence& s) {
  Kinds out;
  for (const auto& t : s.tokens) out.push_back(t.kind);
  return out;
}

TEST(Tokenize, SimpleSentence) {
  const auto s = tokenize("I love dogs.");
  EXPECT_EQ(surfaces(s), (std::vector<std::string>{"I", "love", "dogs", "."}));
  EXPECT_EQ(kinds(s), (Kinds{W, W, W, P}));
}

TEST(Tokenize, CurrencySigilIsSeparate) {
  const auto s = tokenize("$100 billion");
  EXPECT_EQ(surfaces(s), (std::vector<std::string>{"$", "100", "billion"}));
  EXPECT_EQ(s.tokens[1].kind, N);
}

TEST(Tokenize, PercentIsSeparate) {
  const auto s = tokenize("5.3%");
  EXPECT_EQ(surfaces(s), (std::vector<std::string>{"5.3", "%"}));
  EXPECT_EQ(kinds(s), (Kinds{N, P}));
}

struct Fixture {
  const char* text;
  std::vector<std::string> tokens;
  Kinds kinds;
};

// Hand-tokenized sentences.
const std::vector<Fixture>& fixture() {
  static const std::vector<Fixture> f = {
      {"The GDP grew 5.3% in 2019.",
       {"The", "GDP", "grew", "5.3", "%", "in", "2019", "."}, {W, W, W, N, P, W, N, P}},
      {"It cost $1,250.50 total.", {"It", "cost", "$", "1,250.50", "total", "."},
       {W, W, P, N, W, P}},
      {"She won't remain weak.", {"She", "won't", "remain", "weak", "."}, {W, W, W, W, P}},
      {"A well-known fact, indeed!", {"A", "well-known", "fact", ",", "indeed", "!"},
       {W, W, W, P, W, P}},
      {"Temperatures fell to -5 overnight.",
       {"Temperatures", "fell", "to", "-5", "overnight", "."}, {W, W, W, N, W, P}},
      {"Call 3 times (not 4).", {"Call", "3", "times", "(", "not", "4", ")", "."},
       {W, N, W, P, W, N, P, P}},
      {"He finished 3rd of 12.", {"He", "finished", "3rd", "of", "12", "."},
       {W, W, W, W, N, P}},
      {"\"Yes,\" he said.", {"\"", "Yes", ",", "\"", "he", "said", "."}, {P, W, P, P, W, W, P}},
      {"Over 1,000,000 people voted.", {"Over", "1,000,000", "people", "voted", "."},
       {W, N, W, W, P}},
      {"The ratio was 0.75:1.", {"The", "ratio", "was", "0.75", ":", "1", "."},
       {W, W, W, N, P, N, P}},
      {"Rates rose from 1.5 to 2.25 percent.",
       {"Rates", "rose", "from", "1.5", "to", "2.25", "percent", "."}, {W, W, W, N, W, N, W, P}},
      {"Wait... what?", {"Wait", ".", ".", ".", "what", "?"}, {W, P, P, P, W, P}},
      {"It's John's car.", {"It's", "John's", "car", "."}, {W, W, W, P}},
      {"Sales hit $814 billion.", {"Sales", "hit", "$", "814", "billion", "."},
       {W, W, P, N, W, P}},
      {"Room 101 is closed; use 102.", {"Room", "101", "is", "closed", ";", "use", "102", "."},
       {W, N, W, W, P, W, N, P}},
      {"We met on May 5, 2020.", {"We", "met", "on", "May", "5", ",", "2020", "."},
       {W, W, W, W, N, P, N, P}},
      {"Score: 10-2.", {"Score", ":", "10", "-", "2", "."}, {W, P, N, P, N, P}},
      {"naïve café owners", {"naïve", "café", "owners"}, {W, W, W}},
      {"  Leading and trailing  ", {"Leading", "and", "trailing"}, {W, W, W}},
      {"A 12,34 typo.", {"A", "12", ",", "34", "typo", "."}, {W, N, P, N, W, P}},
  };
  return f;
}

TEST(Tokenize, HandTokenizedFixture) {
  for (const auto& f : fixture()) {
    const auto s = tokenize(f.text);
    EXPECT_EQ(surfaces(s), f.tokens) << f.text;
    EXPECT_EQ(kinds(s), f.kinds) << f.text;
    EXPECT_EQ(s.detokenize(), f.text);
  }
}

TEST(Tokenize, OffsetsAreInBoundsAndOrdered) {
  for (const auto& f : fixture()) {
    const auto s = tokenize(f.text);
    std::size_t prev_end = 0;
    for (const auto& t : s.tokens) {
      EXPECT_LE(prev_end, t.begin);
      EXPECT_LT(t.begin, t.end);
      EXPECT_LE(t.end, s.source.size());
      EXPECT_EQ(s.source.substr(t.begin, t.end - t.begin), t.surface);
      prev_end = t.end;
    }
  }
}

TEST(Tokenize, LosslessOnRandomText) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "ab1 ,.$%-'\t\n(9";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    const int len = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    if (s.find_first_not_of(" \t\n") == std::string::npos) continue;
    EXPECT_EQ(tokenize(s).detokenize(), s);
  }
}

TEST(Tokenize, WhitespaceOnlyIsEmptyInput) {
  try {
    tokenize(" \t ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

TEST(Tokenize, ExternalTagsWinOverDictionary) {
  PosDictionary dict{{"dogs", Pos::kNoun}};
  const auto by_dict = tokenize("I love dogs", &dict);
  EXPECT_EQ(by_dict.tokens[2].pos, Pos::kNoun);
  EXPECT_EQ(by_dict.tokens[1].pos, Pos::kOther);
  const std::vector<Pos> tags{Pos::kPronoun, Pos::kVerb, Pos::kAdjective};
  const auto tagged = tokenize("I love dogs", &dict, tags);
  EXPECT_EQ(tagged.tokens[2].pos, Pos::kAdjective);
  EXPECT_THROW(tokenize("I love dogs", nullptr, std::span(tags).first(2)), Error);
}

TEST(NumericLiteral, Grammar) {
  for (const char* ok : {"0", "100", "-5", "+3", "1,000", "12,345,678", "5.3", "1,250.50"}) {
    EXPECT_TRUE(is_numeric_literal(ok)) << ok;
  }
  for (const char* bad : {"", "1,00", "1.2.3", "abc", "1,", ".5", "5.", "--1", "1e5"}) {
    EXPECT_FALSE(is_numeric_literal(bad)) << bad;
  }
}

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein_normalized("abc", "abc"), 0.0);
  EXPECT_DOUBLE_EQ(levenshtein_normalized("kitten", "sitting"), 3.0 / 7.0);
  EXPECT_EQ(levenshtein_normalized("", "ab"), 1.0);
  EXPECT_EQ(levenshtein_normalized("", ""), 0.0);
  // Code points, not bytes.
  EXPECT_EQ(levenshtein("café", "cafe"), 1u);
}

TEST(Levenshtein, MatchesFullTableAndMetricAxioms) {
  std::mt19937_64 rng(5);
  const auto random_string = [&] {
    std::string s;
    const auto len = rng() % 9;
    for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('a' + rng() % 3);
    return s;
  };
  for (int trial = 0; trial < 3000; ++trial) {
    const auto a = random_string();
    const auto b = random_string();
    const auto c = random_string();
    EXPECT_EQ(levenshtein(a, b), oracle::edit_distance(a, b));
    EXPECT_EQ(levenshtein(a, b), levenshtein(b, a));
    EXPECT_LE(levenshtein(a, c), levenshtein(a, b) + levenshtein(b, c));
    EXPECT_EQ(levenshtein_normalized(a, b) == 0.0, a == b);
    EXPECT_DOUBLE_EQ(levenshtein_normalized(a, b), levenshtein_normalized(b, a));
  }
}

TEST(SentenceBleu, Examples) {
  EXPECT_DOUBLE_EQ(sentence_bleu("the cat sat on the mat", "the cat sat on the mat"), 1.0);
  EXPECT_EQ(sentence_bleu("dogs bark", "the cat sat"), 0.0);
  const double expected = oracle::bleu({"the", "cat", "sat"}, {"the", "cat", "sat", "down"});
  EXPECT_DOUBLE_EQ(sentence_bleu("the cat sat", "the cat sat down"), expected);
  // Hand value: p = 1, 3/3, 2/2, 1/1 after smoothing, BP = exp(1 - 4/3).
  EXPECT_NEAR(expected, std::exp(1.0 - 4.0 / 3.0), 1e-15);
  EXPECT_THROW(sentence_bleu("  ", "a"), Error);
}

TEST(RougeL, Examples) {
  EXPECT_DOUBLE_EQ(rouge_l_f1("a b c d", "a b c d"), 1.0);
  EXPECT_EQ(rouge_l_f1("a b", "c d"), 0.0);
  EXPECT_DOUBLE_EQ(rouge_l_f1("a b c d", "a c d e"), 0.75);
  EXPECT_DOUBLE_EQ(rouge_l_f1("The Cat.", "the cat"), 1.0);
  EXPECT_THROW(rouge_l_f1("...", "a"), Error);
}

// Every sequence of 1..max_len words over `vocab`.
std::vector<std::vector<std::string>> all_sequences(const std::vector<std::string>& vocab,
                                                    std::size_t max_len) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::vector<std::string>> frontier = {{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : frontier) {
      for (const auto& w : vocab) {
        auto s = prefix;
        s.push_back(w);
        next.push_back(s);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
  return s;
}

const std::vector<std::string> kVocab = {"a", "b", "c", "d", "e"};

TEST(LexicalOracles, ExhaustiveShortPairs) {
  // Every pair of sequences with up to 3 words on each side.
  const auto seqs = all_sequences(kVocab, 3);
  std::vector<std::string> texts;
  for (const auto& s : seqs) texts.push_back(join(s));
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = 0; j < seqs.size(); ++j) {
      ASSERT_NEAR(sentence_bleu(texts[i], texts[j]), oracle::bleu(seqs[i], seqs[j]), 1e-12)
          << texts[i] << " | " << texts[j];
      ASSERT_NEAR(rouge_l_f1(texts[i], texts[j]), oracle::rouge_l(seqs[i], seqs[j]), 1e-12);
    }
  }
}

TEST(LexicalOracles, AllCandidatesUpToFiveAgainstLongReferences) {
  const auto cands = all_sequences(kVocab, 5);
  std::mt19937_64 rng(3);
  for (std::size_t len = 1; len <= 8; ++len) {
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::string> ref;
      for (std::size_t i = 0; i < len; ++i) ref.push_back(kVocab[rng() % kVocab.size()]);
      const auto ref_text = join(ref);
      for (const auto& c : cands) {
        const auto text = join(c);
        ASSERT_NEAR(sentence_bleu(text, ref_text), oracle::bleu(c, ref), 1e-12);
        ASSERT_NEAR(rouge_l_f1(text, ref_text), oracle::rouge_l(c, ref), 1e-12);
      }
    }
  }
}

TEST(LexicalOracles, RandomPairsUpToEightWords) {
  std::mt19937_64 rng(9);
  const auto draw = [&] {
    std::vector<std::string> s(1 + rng() % 8);
    for (auto& w : s) w = kVocab[rng() % kVocab.size()];
    return s;
  };
  for (int trial = 0; trial < 20000; ++trial) {
    const auto c = draw();
    const auto r = draw();
    ASSERT_NEAR(sentence_bleu(join(c), join(r)), oracle::bleu(c, r), 1e-12);
    ASSERT_NEAR(rouge_l_f1(join(c), join(r)), oracle::rouge_l(c, r), 1e-12);
    ASSERT_DOUBLE_EQ(sentence_bleu(join(c), join(c)), 1.0);
    ASSERT_DOUBLE_EQ(rouge_l_f1(join(c), join(c)), 1.0);
  }
}

// A second verbalizer written independently for 0..9999.
std::string spell_small(int n) {
  static const char* ones[] = {"zero", "one", "two", "three", "four", "five", "six",
                               "seven", "eight", "nine", "ten", "eleven", "twelve",
                               "thirteen", "fourteen", "fifteen", "sixteen",
                               "seventeen", "eighteen", "nineteen"};
  static const char* tens[] = {"", "", "twenty", "thirty", "forty", "fifty", "sixty",
                               "seventy", "eighty", "ninety"};
  std::vector<std::string> parts;
  if (n >= 1000) {
    parts.push_back(std::string(ones[n / 1000]) + " thousand");
    n %= 1000;
    if (n == 0) return parts[0];
  }
  if (n >= 100) {
    parts.push_back(std::string(ones[n / 100]) + " hundred");
    n %= 100;
    if (n == 0) return join(parts);
  }
  if (n < 20) {
    if (n > 0 || parts.empty()) parts.push_back(ones[n]);
  } else {
    parts.push_back(n % 10 == 0 ? tens[n / 10]
                                : std::string(tens[n / 10]) + "-" + ones[n % 10]);
  }
  return join(parts);
}

TEST(NumberToWords, Examples) {
  EXPECT_EQ(number_to_words("100"), "one hundred");
  EXPECT_EQ(number_to_words("0"), "zero");
  EXPECT_EQ(number_to_words("5.3"), "five point three");
  EXPECT_EQ(number_to_words("1,250"), "one thousand two hundred fifty");
  EXPECT_EQ(number_to_words("-7"), "minus seven");
  EXPECT_EQ(number_to_words("999999999999"),
            "nine hundred ninety-nine billion nine hundred ninety-nine million nine "
            "hundred ninety-nine thousand nine hundred ninety-nine");
  for (const char* bad : {"1000000000000", "abc", "1.2.3"}) {
    try {
      number_to_words(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
    }
  }
}

TEST(NumberToWords, MatchesSecondVerbalizer) {
  for (int n = 0; n <= 9999; ++n) {
    ASSERT_EQ(number_to_words(std::to_string(n)), spell_small(n)) << n;
  }
  static const char* digit[] = {"zero", "one", "two", "three", "four",
                                "five", "six", "seven", "eight", "nine"};
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int whole = static_cast<int>(rng() % 10000);
    std::string frac;
    std::string spoken;
    const auto places = 1 + rng() % 3;
    for (std::size_t i = 0; i < places; ++i) {
      const int d = static_cast<int>(rng() % 10);
      frac += static_cast<char>('0' + d);
      spoken += std::string(" ") + digit[d];
    }
    EXPECT_EQ(number_to_words(std::to_string(whole) + "." + frac),
              spell_small(whole) + " point" + spoken);
  }
}

// Parses the verbalizer's integer output back to a number.
long long words_to_number(const std::string& text) {
  static const std::map<std::string, long long> small = [] {
    std::map<std::string, long long> m;
    const char* ones[] = {"zero", "one", "two", "three", "four", "five", "six",
                          "seven", "eight", "nine", "ten", "eleven", "twelve",
                          "thirteen", "fourteen", "fifteen", "sixteen",
                          "seventeen", "eighteen", "nineteen"};
    const char* tens[] = {"twenty", "thirty", "forty", "fifty", "sixty",
                          "seventy", "eighty", "ninety"};
    for (int i = 0; i < 20; ++i) m[ones[i]] = i;
    for (int i = 0; i < 8; ++i) m[tens[i]] = 20 + 10 * i;
    return m;
  }();
  long long total = 0;
  long long group = 0;
  std::istringstream in(text);
  for (std::string w; in >> w;) {
    if (w == "hundred") {
      group *= 100;
    } else if (w == "thousand" || w == "million" || w == "billion") {
      total += group * (w == "thousand" ? 1000 : w == "million" ? 1000000 : 1000000000);
      group = 0;
    } else {
      const auto dash = w.find('-');
      if (dash != std::string::npos) {
        group += small.at(w.substr(0, dash)) + small.at(w.substr(dash + 1));
      } else {
        group += small.at(w);
      }
    }
  }
  return total + group;
}

TEST(NumberToWords, InjectiveUpToOneMillion) {
  for (long long n = 0; n <= 1000000; ++n) {
    const auto words = number_to_words(std::to_string(n));
    ASSERT_EQ(words_to_number(words), n) << words;
  }
  EXPECT_EQ(words_to_number(number_to_words("814000000000")), 814000000000LL);
}

struct Shape {
  bool negative;
  std::size_t int_digits;
  std::size_t decimals;
  bool commas;
};

Shape shape_of(const std::string& s) {
  Shape sh{s[0] == '-', 0, 0, s.find(',') != std::string::npos};
  const auto dot = s.find('.');
  for (std::size_t i = 0; i < s.size() && i < dot; ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) ++sh.int_digits;
  }
  if (dot != std::string::npos) sh.decimals = s.size() - dot - 1;
  return sh;
}

TEST(RandomNumber, KeepsFormatAndNeverRepeats) {
  Rng rng(2024);
  const std::vector<std::string> inputs = {"100", "7", "0", "1.50", "-3.25", "1,234,567",
                                           "12,000.5", "2019", "42", "0.001"};
  for (int trial = 0; trial < 10000; ++trial) {
    const auto& in = inputs[static_cast<std::size_t>(trial) % inputs.size()];
    const auto out = random_number_same_format(in, rng);
    ASSERT_TRUE(is_numeric_literal(out)) << out;
    const auto a = shape_of(in);
    const auto b = shape_of(out);
    ASSERT_EQ(a.negative, b.negative) << in << " -> " << out;
    ASSERT_EQ(a.int_digits, b.int_digits) << in << " -> " << out;
    ASSERT_EQ(a.decimals, b.decimals) << in << " -> " << out;
    ASSERT_EQ(a.commas, b.commas) << in << " -> " << out;
    std::string x = in, y = out;
    std::erase(x, ',');
    std::erase(y, ',');
    ASSERT_NE(std::stod(x), std::stod(y)) << in << " -> " << out;
  }
}

TEST(RandomNumber, DeterministicUnderSeed) {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(random_number_same_format("100", a), random_number_same_format("100", b));
  }
  EXPECT_THROW(random_number_same_format("1.2.3", a), Error);
}

}  // namespace
}  // namespace menli::text
