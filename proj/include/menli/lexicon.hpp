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

#ifndef MENLI_LEXICON_HPP_
#define MENLI_LEXICON_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "menli/textops.hpp"

namespace menli {

enum class Gender { kFemale, kMale };

enum class VerbForm { kBase, kThirdPerson, kPast };
enum class NounForm { kSingular, kPlural };

// Regular English inflection; irregular forms are out of coverage.
std::string plural_of(std::string_view noun);
std::string third_person_of(std::string_view verb);
std::string past_of(std::string_view verb);
std::string inflect(std::string_view verb, VerbForm form);
std::string inflect(std::string_view noun, NounForm form);

struct NegationRule {
  std::string source;  // single token, e.g. "will"
  std::string target;  // one or more tokens, e.g. "won't", "is not"
};

struct PronounTarget {
  std::string word;
  std::string slot;  // subject, object, possessive, ...
};

/// Word pools and rule tables used by the perturbation templates. Populate
/// the public fields (or call load()) and then finalize(), which validates
/// the invariants and builds the lookup indexes.
class Lexicon {
 public:
  std::vector<std::string> nouns;
  std::vector<std::string> verbs;
  std::vector<std::string> adjectives;
  // Lower-cased pronoun -> replacements in the same syntactic slot.
  std::map<std::string, std::vector<PronounTarget>> pronoun_map;
  std::vector<std::string> female_names;
  std::vector<std::string> male_names;
  std::vector<NegationRule> negation_rules;
  // Agreement flips, applied in both directions ("is" <-> "are").
  std::vector<std::pair<std::string, std::string>> agreement_pairs;
  // Closed-class words with a fixed part of speech.
  std::map<std::string, text::Pos> function_words;

  /// Reads nouns.txt, verbs.txt, adjectives.txt, names_female.txt,
  /// names_male.txt, pronouns.tsv, negation.tsv, agreement.tsv and
  /// function_words.tsv from `dir`. Missing files leave the pool empty.
  static Lexicon load(const std::filesystem::path& dir);

  /// The lexicon shipped under data/lexicon.
  static const Lexicon& builtin();

  void finalize();

  const text::PosDictionary& pos_dictionary() const { return pos_; }

  struct VerbInfo {
    std::string lemma;
    VerbForm form;
  };
  struct NounInfo {
    std::string lemma;
    NounForm form;
  };
  std::optional<VerbInfo> verb_info(std::string_view lower) const;
  std::optional<NounInfo> noun_info(std::string_view lower) const;
  std::optional<Gender> name_gender(std::string_view surface) const;
  const std::vector<std::string>& names(Gender g) const {
    return g == Gender::kFemale ? female_names : male_names;
  }

 private:
  text::PosDictionary pos_;
  std::unordered_map<std::string, VerbInfo> verb_forms_;
  std::unordered_map<std::string, NounInfo> noun_forms_;
  std::unordered_map<std::string, Gender> name_index_;
};

}  // namespace menli

#endif  // MENLI_LEXICON_HPP_
