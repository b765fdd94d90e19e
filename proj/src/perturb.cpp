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

#include "menli/perturb.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>

#include "menli/error.hpp"

namespace menli {

using text::Pos;
using text::Token;
using text::TokenizedSentence;
using text::TokenKind;

namespace {

constexpr std::array<std::string_view, 12> kNames = {
    "addition", "omission", "mismatch_noun", "mismatch_verb",
    "mismatch_adj", "negation", "number", "pronoun",
    "name", "jumbling", "spelling", "svd"};

[[noreturn]] void not_applicable(Phenomenon p, const std::string& why) {
  throw Error(ErrorCode::kNotApplicable,
              std::string(name_of(p)) + ": " + why);
}

std::size_t pick(std::size_t n, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

PerturbationResult finish(const TokenizedSentence& s, Phenomenon p,
                          std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return a.begin < b.begin;
  });
  PerturbationResult r;
  r.original = s.source;
  r.perturbed = apply_edits(s.source, edits);
  r.phenomena = {p};
  r.edits = std::move(edits);
  if (r.perturbed == r.original) not_applicable(p, "edit left text unchanged");
  return r;
}

Edit replace_token(const Token& t, std::string replacement) {
  return {t.begin, t.end, std::move(replacement), 0};
}

std::vector<std::size_t> indices_where(
    const TokenizedSentence& s, const std::function<bool(const Token&)>& pred) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (pred(s.tokens[i])) out.push_back(i);
  }
  return out;
}

bool is_word(const Token& t) { return t.kind != TokenKind::kPunctuation; }

const std::set<std::string>& month_names() {
  static const std::set<std::string> months = {
      "January", "February", "March", "April", "May", "June", "July",
      "August", "September", "October", "November", "December",
      "Jan", "Feb", "Mar", "Apr", "Jun", "Jul", "Aug", "Sep", "Sept",
      "Oct", "Nov", "Dec"};
  return months;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool matches_at(const TokenizedSentence& s, std::size_t k,
                const std::vector<std::string>& words) {
  if (words.empty() || k + words.size() > s.tokens.size()) return false;
  for (std::size_t j = 0; j < words.size(); ++j) {
    if (text::to_lower(s.tokens[k + j].surface) != words[j]) return false;
  }
  return true;
}

bool is_subject_for_base_form(const TokenizedSentence& s, std::size_t k,
                              const Lexicon& lex) {
  if (k == 0) return false;
  const auto prev = text::to_lower(s.tokens[k - 1].surface);
  if (prev == "i" || prev == "you" || prev == "we" || prev == "they") {
    return true;
  }
  const auto noun = lex.noun_info(prev);
  return noun && noun->form == NounForm::kPlural &&
         s.tokens[k - 1].pos == Pos::kNoun;
}

}  // namespace

std::string_view name_of(Phenomenon p) {
  return kNames[static_cast<std::size_t>(p)];
}

std::optional<Phenomenon> parse_phenomenon(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAllPhenomena[i];
  }
  return std::nullopt;
}

std::string label_of(std::span<const Phenomenon> kinds) {
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i > 0) out += '+';
    out += name_of(kinds[i]);
  }
  return out;
}

std::optional<std::vector<Phenomenon>> parse_label(std::string_view label) {
  std::vector<Phenomenon> out;
  std::size_t start = 0;
  while (start <= label.size()) {
    const std::size_t plus = label.find('+', start);
    const auto part = label.substr(
        start, plus == std::string_view::npos ? std::string_view::npos
                                              : plus - start);
    const auto p = parse_phenomenon(part);
    if (!p) return std::nullopt;
    out.push_back(*p);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

std::string apply_edits(std::string_view original, std::span<const Edit> edits) {
  std::string current(original);
  std::size_t max_stage = 0;
  for (const auto& e : edits) max_stage = std::max(max_stage, e.stage);
  for (std::size_t stage = 0; stage <= max_stage; ++stage) {
    std::vector<const Edit*> batch;
    for (const auto& e : edits) {
      if (e.stage == stage) batch.push_back(&e);
    }
    if (batch.empty()) continue;
    std::stable_sort(batch.begin(), batch.end(),
                     [](const Edit* a, const Edit* b) { return a->begin < b->begin; });
    std::string next;
    std::size_t cursor = 0;
    for (const Edit* e : batch) {
      if (e->begin < cursor || e->end < e->begin || e->end > current.size()) {
        throw Error(ErrorCode::kInvalidArgument, "overlapping or out-of-range edit");
      }
      next.append(current, cursor, e->begin - cursor);
      next += e->replacement;
      cursor = e->end;
    }
    next.append(current, cursor, std::string::npos);
    current = std::move(next);
  }
  return current;
}

bool is_date_number(const TokenizedSentence& s, std::size_t index) {
  const Token& t = s.tokens[index];
  if (t.kind != TokenKind::kNumber) return false;
  const auto& surface = t.surface;
  if (surface.size() == 4 &&
      std::all_of(surface.begin(), surface.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const int year = std::stoi(surface);
    if (year >= 1000 && year <= 2100) return true;
  }
  const auto& months = month_names();
  if (index > 0 && months.count(s.tokens[index - 1].surface) != 0) return true;
  if (index + 1 < s.tokens.size() &&
      months.count(s.tokens[index + 1].surface) != 0) {
    return true;
  }
  return false;
}

PerturbationResult perturb_addition(const TokenizedSentence& s,
                                    const Lexicon& lex, Rng& rng) {
  const auto hosts = indices_where(s, [](const Token& t) {
    return t.kind == TokenKind::kWord && t.pos == Pos::kNoun;
  });
  if (hosts.empty()) not_applicable(Phenomenon::kAddition, "no noun");
  const Token& host = s.tokens[hosts[pick(hosts.size(), rng)]];
  const auto host_lower = text::to_lower(host.surface);
  const auto info = lex.noun_info(host_lower);
  const NounForm form = info ? info->form : NounForm::kSingular;
  std::vector<std::string> pool;
  for (const auto& n : lex.nouns) {
    auto word = inflect(text::to_lower(n), form);
    if (word != host_lower && (!info || text::to_lower(n) != info->lemma)) {
      pool.push_back(std::move(word));
    }
  }
  if (pool.empty()) not_applicable(Phenomenon::kAddition, "empty noun pool");
  const auto& added = pool[pick(pool.size(), rng)];
  return finish(s, Phenomenon::kAddition,
                {Edit{host.end, host.end, " and " + added, 0}});
}

PerturbationResult perturb_omission(const TokenizedSentence& s, Rng& rng) {
  const auto words = indices_where(s, is_word);
  const std::size_t w = words.size();
  if (w < 5) not_applicable(Phenomenon::kOmission, "fewer than 5 words");
  const double rate = std::uniform_real_distribution<double>(0.01, 0.20)(rng);
  const auto k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(rate * static_cast<double>(w))));
  std::vector<std::size_t> chosen = words;
  std::shuffle(chosen.begin(), chosen.end(), rng);
  chosen.resize(k);
  std::vector<bool> removed(s.tokens.size(), false);
  for (std::size_t i : chosen) removed[i] = true;

  std::vector<Edit> edits;
  std::size_t i = 0;
  while (i < s.tokens.size()) {
    if (!removed[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < s.tokens.size() && removed[j + 1]) ++j;
    Edit e;
    if (i > 0) {
      e.begin = s.tokens[i - 1].end;
      e.end = s.tokens[j].end;
    } else {
      e.begin = s.tokens[i].begin;
      e.end = j + 1 < s.tokens.size() ? s.tokens[j + 1].begin : s.tokens[j].end;
    }
    edits.push_back(e);
    i = j + 1;
  }
  return finish(s, Phenomenon::kOmission, std::move(edits));
}

PerturbationResult perturb_mismatch(const TokenizedSentence& s, Pos pos,
                                    const Lexicon& lex, Rng& rng) {
  Phenomenon p = Phenomenon::kMismatchNoun;
  const std::vector<std::string>* pool = &lex.nouns;
  if (pos == Pos::kVerb) {
    p = Phenomenon::kMismatchVerb;
    pool = &lex.verbs;
  } else if (pos == Pos::kAdjective) {
    p = Phenomenon::kMismatchAdj;
    pool = &lex.adjectives;
  } else if (pos != Pos::kNoun) {
    throw Error(ErrorCode::kInvalidArgument,
                "mismatch is defined for nouns, verbs and adjectives");
  }
  const auto slots = indices_where(s, [pos](const Token& t) {
    return t.kind == TokenKind::kWord && t.pos == pos;
  });
  if (slots.empty()) {
    not_applicable(p, "no " + std::string(text::to_string(pos)));
  }
  const Token& target = s.tokens[slots[pick(slots.size(), rng)]];
  const auto lower = text::to_lower(target.surface);
  std::string lemma = lower;
  std::function<std::string(const std::string&)> shape =
      [](const std::string& w) { return w; };
  if (pos == Pos::kNoun) {
    if (const auto info = lex.noun_info(lower)) {
      lemma = info->lemma;
      shape = [form = info->form](const std::string& w) { return inflect(w, form); };
    }
  } else if (pos == Pos::kVerb) {
    if (const auto info = lex.verb_info(lower)) {
      lemma = info->lemma;
      shape = [form = info->form](const std::string& w) { return inflect(w, form); };
    }
  }
  std::vector<std::string> candidates;
  for (const auto& w : *pool) {
    const auto cand_lemma = text::to_lower(w);
    auto form = shape(cand_lemma);
    if (cand_lemma != lemma && form != lower) candidates.push_back(std::move(form));
  }
  if (candidates.empty()) not_applicable(p, "no alternative word in pool");
  const auto& replacement = candidates[pick(candidates.size(), rng)];
  return finish(s, p,
                {replace_token(target, text::match_case(replacement, target.surface))});
}

PerturbationResult perturb_negation(const TokenizedSentence& s,
                                    const Lexicon& lex) {
  std::vector<std::vector<std::string>> targets;
  targets.reserve(lex.negation_rules.size());
  for (const auto& rule : lex.negation_rules) {
    targets.push_back(split_words(rule.target));
  }
  const auto& toks = s.tokens;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    const Token& t = toks[k];
    const auto lower = text::to_lower(t.surface);

    // Remove an existing negation from the rule table.
    for (std::size_t r = 0; r < targets.size(); ++r) {
      if (matches_at(s, k, targets[r])) {
        const Token& last = toks[k + targets[r].size() - 1];
        return finish(s, Phenomenon::kNegation,
                      {Edit{t.begin, last.end,
                            text::match_case(lex.negation_rules[r].source, t.surface), 0}});
      }
    }

    // Remove do-support: "doesn't like" -> "likes".
    std::optional<VerbForm> form;
    std::size_t verb_at = k + 1;
    if (lower == "doesn't" || lower == "does") form = VerbForm::kThirdPerson;
    if (lower == "don't" || lower == "do") form = VerbForm::kBase;
    if (lower == "didn't" || lower == "did") form = VerbForm::kPast;
    if (form && lower.find('\'') == std::string::npos) {
      if (k + 1 < toks.size() && text::to_lower(toks[k + 1].surface) == "not") {
        verb_at = k + 2;
      } else {
        form.reset();
      }
    }
    if (form && verb_at < toks.size()) {
      const auto verb = lex.verb_info(text::to_lower(toks[verb_at].surface));
      if (verb && verb->form == VerbForm::kBase) {
        return finish(s, Phenomenon::kNegation,
                      {Edit{t.begin, toks[verb_at].end,
                            text::match_case(inflect(verb->lemma, *form), t.surface), 0}});
      }
    }

    // Negate an auxiliary, copula or modal.
    for (const auto& rule : lex.negation_rules) {
      if (lower == rule.source) {
        return finish(s, Phenomenon::kNegation,
                      {replace_token(t, text::match_case(rule.target, t.surface))});
      }
    }

    // Insert do-support before a finite main verb.
    if (t.kind == TokenKind::kWord && t.pos == Pos::kVerb) {
      const auto verb = lex.verb_info(lower);
      if (!verb) continue;
      std::string aux;
      if (verb->form == VerbForm::kThirdPerson) {
        aux = "doesn't";
      } else if (verb->form == VerbForm::kPast) {
        aux = "didn't";
      } else if (is_subject_for_base_form(s, k, lex)) {
        aux = "don't";
      }
      if (!aux.empty()) {
        return finish(s, Phenomenon::kNegation,
                      {replace_token(t, text::match_case(aux, t.surface) + " " +
                                            verb->lemma)});
      }
    }
  }
  not_applicable(Phenomenon::kNegation, "no negation rule matches");
}

PerturbationResult perturb_number(const TokenizedSentence& s, Rng& rng) {
  std::vector<Edit> edits;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const Token& t = s.tokens[i];
    if (t.kind != TokenKind::kNumber || is_date_number(s, i)) continue;
    edits.push_back(replace_token(t, text::random_number_same_format(t.surface, rng)));
  }
  if (edits.empty()) not_applicable(Phenomenon::kNumberError, "no non-date number");
  return finish(s, Phenomenon::kNumberError, std::move(edits));
}

PerturbationResult perturb_pronoun(const TokenizedSentence& s,
                                   const Lexicon& lex, Rng& rng) {
  std::vector<Edit> edits;
  for (const Token& t : s.tokens) {
    if (t.kind != TokenKind::kWord) continue;
    const auto it = lex.pronoun_map.find(text::to_lower(t.surface));
    if (it == lex.pronoun_map.end() || it->second.empty()) continue;
    const auto& target = it->second[pick(it->second.size(), rng)].word;
    edits.push_back(replace_token(t, text::match_case(target, t.surface)));
  }
  if (edits.empty()) not_applicable(Phenomenon::kPronounError, "no covered pronoun");
  return finish(s, Phenomenon::kPronounError, std::move(edits));
}

PerturbationResult perturb_name(const TokenizedSentence& s, const Lexicon& lex,
                                Rng& rng) {
  const auto found = indices_where(s, [&lex](const Token& t) {
    return t.kind == TokenKind::kWord && lex.name_gender(t.surface).has_value();
  });
  if (found.empty()) not_applicable(Phenomenon::kNameError, "no known name");
  const Token& t = s.tokens[found[pick(found.size(), rng)]];
  std::vector<std::string> pool;
  for (const auto& n : lex.names(*lex.name_gender(t.surface))) {
    if (n != t.surface) pool.push_back(n);
  }
  if (pool.empty()) not_applicable(Phenomenon::kNameError, "no alternative name");
  return finish(s, Phenomenon::kNameError,
                {replace_token(t, pool[pick(pool.size(), rng)])});
}

PerturbationResult perturb_jumble(const TokenizedSentence& s, Rng& rng) {
  const auto slots = indices_where(s, is_word);
  if (slots.size() < 3) not_applicable(Phenomenon::kJumbling, "fewer than 3 words");
  const auto& first = s.tokens[slots.front()].surface;
  if (std::all_of(slots.begin(), slots.end(),
                  [&](std::size_t i) { return s.tokens[i].surface == first; })) {
    not_applicable(Phenomenon::kJumbling, "all words identical");
  }
  std::vector<std::size_t> order = slots;
  bool changed = false;
  while (!changed) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (s.tokens[order[k]].surface != s.tokens[slots[k]].surface) changed = true;
    }
  }
  std::vector<Edit> edits;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const Token& at = s.tokens[slots[k]];
    const Token& from = s.tokens[order[k]];
    if (at.surface != from.surface) edits.push_back(replace_token(at, from.surface));
  }
  return finish(s, Phenomenon::kJumbling, std::move(edits));
}

PerturbationResult perturb_typo(const TokenizedSentence& s, Rng& rng) {
  const auto eligible = indices_where(s, [](const Token& t) {
    return t.kind == TokenKind::kWord && t.surface.size() >= 4 &&
           std::all_of(t.surface.begin(), t.surface.end(), [](char c) {
             return std::isalpha(static_cast<unsigned char>(c)) != 0;
           });
  });
  if (eligible.empty()) not_applicable(Phenomenon::kSpellingError, "no word of length >= 4");
  const Token& t = s.tokens[eligible[pick(eligible.size(), rng)]];
  std::string word = t.surface;
  std::vector<std::size_t> swaps;
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] != word[i + 1]) swaps.push_back(i);
  }
  const bool transpose = std::bernoulli_distribution(0.5)(rng) && !swaps.empty();
  if (transpose) {
    const std::size_t i = swaps[pick(swaps.size(), rng)];
    std::swap(word[i], word[i + 1]);
  } else {
    word.erase(pick(word.size(), rng), 1);
  }
  return finish(s, Phenomenon::kSpellingError, {replace_token(t, word)});
}

PerturbationResult perturb_svd(const TokenizedSentence& s, const Lexicon& lex) {
  for (const Token& t : s.tokens) {
    if (t.kind != TokenKind::kWord) continue;
    const auto lower = text::to_lower(t.surface);
    for (const auto& [a, b] : lex.agreement_pairs) {
      if (lower == a || lower == b) {
        return finish(s, Phenomenon::kSubjectVerbDisagreement,
                      {replace_token(t, text::match_case(lower == a ? b : a, t.surface))});
      }
    }
    if (t.pos != Pos::kVerb) continue;
    const auto verb = lex.verb_info(lower);
    if (!verb || verb->form == VerbForm::kPast) continue;
    const VerbForm flipped = verb->form == VerbForm::kBase ? VerbForm::kThirdPerson
                                                           : VerbForm::kBase;
    return finish(s, Phenomenon::kSubjectVerbDisagreement,
                  {replace_token(t, text::match_case(inflect(verb->lemma, flipped),
                                                     t.surface))});
  }
  not_applicable(Phenomenon::kSubjectVerbDisagreement, "no covered verb form");
}

PerturbationResult perturb(const TokenizedSentence& s, Phenomenon kind,
                           const Lexicon& lex, Rng& rng) {
  switch (kind) {
    case Phenomenon::kAddition: return perturb_addition(s, lex, rng);
    case Phenomenon::kOmission: return perturb_omission(s, rng);
    case Phenomenon::kMismatchNoun: return perturb_mismatch(s, Pos::kNoun, lex, rng);
    case Phenomenon::kMismatchVerb: return perturb_mismatch(s, Pos::kVerb, lex, rng);
    case Phenomenon::kMismatchAdj: return perturb_mismatch(s, Pos::kAdjective, lex, rng);
    case Phenomenon::kNegation: return perturb_negation(s, lex);
    case Phenomenon::kNumberError: return perturb_number(s, rng);
    case Phenomenon::kPronounError: return perturb_pronoun(s, lex, rng);
    case Phenomenon::kNameError: return perturb_name(s, lex, rng);
    case Phenomenon::kJumbling: return perturb_jumble(s, rng);
    case Phenomenon::kSpellingError: return perturb_typo(s, rng);
    case Phenomenon::kSubjectVerbDisagreement: return perturb_svd(s, lex);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown phenomenon");
}

PerturbationResult compose(const TokenizedSentence& s,
                           std::span<const Phenomenon> kinds,
                           const Lexicon& lex, Rng& rng) {
  if (kinds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no phenomena to compose");
  }
  PerturbationResult out;
  out.original = s.source;
  TokenizedSentence current = s;
  for (std::size_t stage = 0; stage < kinds.size(); ++stage) {
    if (stage > 0) current = text::tokenize(out.perturbed, &lex.pos_dictionary());
    auto step = perturb(current, kinds[stage], lex, rng);
    for (auto& e : step.edits) {
      e.stage = stage;
      out.edits.push_back(std::move(e));
    }
    out.perturbed = std::move(step.perturbed);
  }
  out.phenomena.assign(kinds.begin(), kinds.end());
  if (out.perturbed == out.original) {
    not_applicable(kinds.front(), "composition cancelled out");
  }
  return out;
}

PerturbationResult perturb_text(std::string_view text,
                                std::span<const Phenomenon> kinds,
                                const Lexicon& lex, std::uint64_t seed) {
  Rng rng(seed);
  auto result = compose(text::tokenize(text, &lex.pos_dictionary()), kinds, lex, rng);
  result.rng_seed = seed;
  return result;
}

}  // namespace menli
