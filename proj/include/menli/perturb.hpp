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

#ifndef MENLI_PERTURB_HPP_
#define MENLI_PERTURB_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "menli/lexicon.hpp"
#include "menli/textops.hpp"

namespace menli {

enum class Phenomenon {
  kAddition,
  kOmission,
  kMismatchNoun,
  kMismatchVerb,
  kMismatchAdj,
  kNegation,
  kNumberError,
  kPronounError,
  kNameError,
  kJumbling,
  kSpellingError,
  kSubjectVerbDisagreement,
};

inline constexpr std::array<Phenomenon, 12> kAllPhenomena = {
    Phenomenon::kAddition,      Phenomenon::kOmission,
    Phenomenon::kMismatchNoun,  Phenomenon::kMismatchVerb,
    Phenomenon::kMismatchAdj,   Phenomenon::kNegation,
    Phenomenon::kNumberError,   Phenomenon::kPronounError,
    Phenomenon::kNameError,     Phenomenon::kJumbling,
    Phenomenon::kSpellingError, Phenomenon::kSubjectVerbDisagreement,
};

/// The first nine phenomena test adequacy, the last three fluency.
constexpr bool is_adequacy(Phenomenon p) {
  return static_cast<int>(p) < static_cast<int>(Phenomenon::kJumbling);
}

/// Short stable name used in ids and on the command line ("number", "svd").
std::string_view name_of(Phenomenon p);
std::optional<Phenomenon> parse_phenomenon(std::string_view name);

/// Composite label: names joined with '+', e.g. "number+negation".
std::string label_of(std::span<const Phenomenon> kinds);
/// Inverse of label_of; nullopt if any part is unknown.
std::optional<std::vector<Phenomenon>> parse_label(std::string_view label);

/// Replaces [begin, end) of the text of its stage with `replacement`.
/// Stage k edits are expressed against the output of stage k-1 (stage 0
/// against the original), so composed perturbations replay exactly.
struct Edit {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string replacement;
  std::size_t stage = 0;

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct PerturbationResult {
  std::string original;
  std::string perturbed;
  std::vector<Phenomenon> phenomena;
  std::vector<Edit> edits;
  std::uint64_t rng_seed = 0;
};

/// Replays edits stage by stage; within a stage edits must not overlap.
std::string apply_edits(std::string_view original, std::span<const Edit> edits);

// Individual templates. Each throws Error(kNotApplicable) when its
// precondition fails.
PerturbationResult perturb_addition(const text::TokenizedSentence& s,
                                    const Lexicon& lex, Rng& rng);
PerturbationResult perturb_omission(const text::TokenizedSentence& s, Rng& rng);
PerturbationResult perturb_mismatch(const text::TokenizedSentence& s,
                                    text::Pos pos, const Lexicon& lex,
                                    Rng& rng);
PerturbationResult perturb_negation(const text::TokenizedSentence& s,
                                    const Lexicon& lex);
PerturbationResult perturb_number(const text::TokenizedSentence& s, Rng& rng);
PerturbationResult perturb_pronoun(const text::TokenizedSentence& s,
                                   const Lexicon& lex, Rng& rng);
PerturbationResult perturb_name(const text::TokenizedSentence& s,
                                const Lexicon& lex, Rng& rng);
PerturbationResult perturb_jumble(const text::TokenizedSentence& s, Rng& rng);
PerturbationResult perturb_typo(const text::TokenizedSentence& s, Rng& rng);
PerturbationResult perturb_svd(const text::TokenizedSentence& s,
                               const Lexicon& lex);

/// Dispatches to the template for `kind`.
PerturbationResult perturb(const text::TokenizedSentence& s, Phenomenon kind,
                           const Lexicon& lex, Rng& rng);

/// Applies `kinds` left to right, each on the previous output.
PerturbationResult compose(const text::TokenizedSentence& s,
                           std::span<const Phenomenon> kinds,
                           const Lexicon& lex, Rng& rng);

/// Tokenizes with the lexicon's POS dictionary, seeds a fresh engine with
/// `seed` and composes. Records the seed in the result.
PerturbationResult perturb_text(std::string_view text,
                                std::span<const Phenomenon> kinds,
                                const Lexicon& lex, std::uint64_t seed);

/// Numbers that look like years (1000-2100) or sit next to a month name.
bool is_date_number(const text::TokenizedSentence& s, std::size_t index);

}  // namespace menli

#endif  // MENLI_PERTURB_HPP_
