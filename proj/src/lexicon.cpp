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

#include "menli/lexicon.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "menli/error.hpp"

#ifndef MENLI_DATA_DIR
#define MENLI_DATA_DIR "data"
#endif

namespace menli {
namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool needs_es(std::string_view w) {
  return ends_with(w, "s") || ends_with(w, "x") || ends_with(w, "z") ||
         ends_with(w, "ch") || ends_with(w, "sh");
}

bool consonant_y(std::string_view w) {
  return w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::vector<std::string> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, '\t')) out.push_back(field);
  return out;
}

text::Pos parse_pos(const std::string& s, const std::filesystem::path& file) {
  if (s == "noun") return text::Pos::kNoun;
  if (s == "verb") return text::Pos::kVerb;
  if (s == "adjective") return text::Pos::kAdjective;
  if (s == "pronoun") return text::Pos::kPronoun;
  if (s == "other") return text::Pos::kOther;
  throw Error(ErrorCode::kParseError,
              file.string() + ": unknown part of speech '" + s + "'");
}

}  // namespace

std::string plural_of(std::string_view noun) {
  std::string w(noun);
  if (consonant_y(w)) return w.substr(0, w.size() - 1) + "ies";
  if (needs_es(w)) return w + "es";
  return w + "s";
}

std::string third_person_of(std::string_view verb) {
  if (verb == "have") return "has";
  if (verb == "be") return "is";
  if (verb == "do") return "does";
  if (verb == "go") return "goes";
  return plural_of(verb);
}

std::string past_of(std::string_view verb) {
  std::string w(verb);
  if (ends_with(w, "e")) return w + "d";
  if (consonant_y(w)) return w.substr(0, w.size() - 1) + "ied";
  return w + "ed";
}

std::string inflect(std::string_view verb, VerbForm form) {
  switch (form) {
    case VerbForm::kBase: return std::string(verb);
    case VerbForm::kThirdPerson: return third_person_of(verb);
    case VerbForm::kPast: return past_of(verb);
  }
  return std::string(verb);
}

std::string inflect(std::string_view noun, NounForm form) {
  return form == NounForm::kPlural ? plural_of(noun) : std::string(noun);
}

Lexicon Lexicon::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIoError,
                "lexicon directory not found: " + dir.string());
  }
  Lexicon lex;
  lex.nouns = read_lines(dir / "nouns.txt");
  lex.verbs = read_lines(dir / "verbs.txt");
  lex.adjectives = read_lines(dir / "adjectives.txt");
  lex.female_names = read_lines(dir / "names_female.txt");
  lex.male_names = read_lines(dir / "names_male.txt");
  for (const auto& line : read_lines(dir / "pronouns.tsv")) {
    const auto f = split_tabs(line);
    if (f.size() < 2) {
      throw Error(ErrorCode::kParseError, "pronouns.tsv: bad line '" + line + "'");
    }
    lex.pronoun_map[text::to_lower(f[0])].push_back(
        {text::to_lower(f[1]), f.size() > 2 ? f[2] : std::string()});
  }
  for (const auto& line : read_lines(dir / "negation.tsv")) {
    const auto f = split_tabs(line);
    if (f.size() != 2) {
      throw Error(ErrorCode::kParseError, "negation.tsv: bad line '" + line + "'");
    }
    lex.negation_rules.push_back({text::to_lower(f[0]), text::to_lower(f[1])});
  }
  for (const auto& line : read_lines(dir / "agreement.tsv")) {
    const auto f = split_tabs(line);
    if (f.size() != 2) {
      throw Error(ErrorCode::kParseError, "agreement.tsv: bad line '" + line + "'");
    }
    lex.agreement_pairs.emplace_back(text::to_lower(f[0]), text::to_lower(f[1]));
  }
  const auto fw_path = dir / "function_words.tsv";
  for (const auto& line : read_lines(fw_path)) {
    const auto f = split_tabs(line);
    if (f.size() != 2) {
      throw Error(ErrorCode::kParseError,
                  "function_words.tsv: bad line '" + line + "'");
    }
    lex.function_words[text::to_lower(f[0])] = parse_pos(f[1], fw_path);
  }
  lex.finalize();
  return lex;
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex =
      load(std::filesystem::path(MENLI_DATA_DIR) / "lexicon");
  return lex;
}

void Lexicon::finalize() {
  for (const auto& [word, targets] : pronoun_map) {
    for (const auto& t : targets) {
      if (t.word == word) {
        throw Error(ErrorCode::kInvalidArgument,
                    "pronoun map sends '" + word + "' to itself");
      }
      const auto back = pronoun_map.find(t.word);
      if (back == pronoun_map.end() || t.slot.empty()) continue;
      for (const auto& bt : back->second) {
        if (!bt.slot.empty() && bt.slot != t.slot) {
          throw Error(ErrorCode::kInvalidArgument,
                      "pronoun '" + t.word + "' used in slots '" + t.slot +
                          "' and '" + bt.slot + "'");
        }
      }
    }
  }

  std::set<std::string> noun_set;
  for (const auto& n : nouns) noun_set.insert(text::to_lower(n));
  name_index_.clear();
  for (Gender g : {Gender::kFemale, Gender::kMale}) {
    for (const auto& name : names(g)) {
      if (noun_set.count(text::to_lower(name)) != 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "name '" + name + "' is also a common noun");
      }
      name_index_.emplace(name, g);
    }
  }

  verb_forms_.clear();
  noun_forms_.clear();
  pos_.clear();
  // Lowest precedence first; later assignments win.
  for (const auto& n : nouns) {
    const auto lemma = text::to_lower(n);
    noun_forms_.try_emplace(lemma, NounInfo{lemma, NounForm::kSingular});
    noun_forms_.try_emplace(plural_of(lemma), NounInfo{lemma, NounForm::kPlural});
    pos_[lemma] = text::Pos::kNoun;
    pos_[plural_of(lemma)] = text::Pos::kNoun;
  }
  for (const auto& a : adjectives) pos_[text::to_lower(a)] = text::Pos::kAdjective;
  for (const auto& v : verbs) {
    const auto lemma = text::to_lower(v);
    for (VerbForm f : {VerbForm::kBase, VerbForm::kThirdPerson, VerbForm::kPast}) {
      const auto form = inflect(lemma, f);
      verb_forms_.try_emplace(form, VerbInfo{lemma, f});
      pos_[form] = text::Pos::kVerb;
    }
  }
  for (const auto& [word, targets] : pronoun_map) {
    pos_[word] = text::Pos::kPronoun;
    for (const auto& t : targets) pos_[t.word] = text::Pos::kPronoun;
  }
  for (const auto& [word, pos] : function_words) pos_[word] = pos;
}

std::optional<Lexicon::VerbInfo> Lexicon::verb_info(std::string_view lower) const {
  const auto it = verb_forms_.find(std::string(lower));
  if (it == verb_forms_.end()) return std::nullopt;
  return it->second;
}

std::optional<Lexicon::NounInfo> Lexicon::noun_info(std::string_view lower) const {
  const auto it = noun_forms_.find(std::string(lower));
  if (it == noun_forms_.end()) return std::nullopt;
  return it->second;
}

std::optional<Gender> Lexicon::name_gender(std::string_view surface) const {
  const auto it = name_index_.find(std::string(surface));
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace menli
