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
#include <set>
#include <string>

#include "corpus.hpp"
#include "invariants.hpp"
#include "menli/error.hpp"
#include "menli/lexicon.hpp"
#include "menli/perturb.hpp"

namespace {

using menli::Phenomenon;
using menli::text::tokenize;

const menli::Lexicon& lex() { return menli::Lexicon::builtin(); }

menli::text::TokenizedSentence tok(const std::string& s) {
  return tokenize(s, &lex().pos_dictionary());
}

TEST(Perturb, NamesRoundTrip) {
  for (const auto p : menli::kAllPhenomena) {
    EXPECT_EQ(menli::parse_phenomenon(menli::name_of(p)), p);
  }
  const std::vector<Phenomenon> kinds = {Phenomenon::kNumberError, Phenomenon::kNegation};
  EXPECT_EQ(menli::label_of(kinds), "number+negation");
  EXPECT_EQ(menli::parse_label("number+negation"), kinds);
  EXPECT_FALSE(menli::parse_label("number+bogus"));
  EXPECT_FALSE(menli::parse_phenomenon("bogus"));
}

TEST(Perturb, AdequacySplit) {
  int adequacy = 0;
  for (const auto p : menli::kAllPhenomena) adequacy += menli::is_adequacy(p);
  EXPECT_EQ(adequacy, 9);
  EXPECT_FALSE(menli::is_adequacy(Phenomenon::kJumbling));
}

TEST(Perturb, ApplyEditsStages) {
  const std::vector<menli::Edit> edits = {{0, 3, "A", 0}, {4, 7, "dog", 0}, {0, 1, "The", 1}};
  EXPECT_EQ(menli::apply_edits("the cat sat", edits), "The dog sat");
  const std::vector<menli::Edit> overlap = {{0, 5, "x", 0}, {3, 7, "y", 0}};
  EXPECT_THROW(menli::apply_edits("the cat sat", overlap), menli::Error);
}

TEST(Perturb, InvariantsHoldOnCorpus) {
  const auto sentences = corpus::sentences(lex(), 200, 11);
  for (const auto kind : menli::kAllPhenomena) {
    int applied = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const auto s = tok(sentences[i]);
      menli::Rng rng(1000 + i);
      menli::PerturbationResult r;
      try {
        r = menli::perturb(s, kind, lex(), rng);
      } catch (const menli::Error& e) {
        ASSERT_EQ(e.code(), menli::ErrorCode::kNotApplicable) << sentences[i];
        continue;
      }
      ++applied;
      EXPECT_EQ(invariants::check(kind, s, r, lex()), "")
          << menli::name_of(kind) << ": '" << r.original << "' -> '" << r.perturbed << "'";
    }
    EXPECT_GT(applied, 20) << menli::name_of(kind);
  }
}

TEST(Perturb, Deterministic) {
  const auto sentences = corpus::sentences(lex(), 30, 5);
  for (const auto kind : menli::kAllPhenomena) {
    for (const auto& s : sentences) {
      const std::vector<Phenomenon> kinds = {kind};
      std::string a, b;
      try {
        a = menli::perturb_text(s, kinds, lex(), 77).perturbed;
        b = menli::perturb_text(s, kinds, lex(), 77).perturbed;
      } catch (const menli::Error&) {
        continue;
      }
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Perturb, ComposedEditsReplay) {
  const auto sentences = corpus::sentences(lex(), 100, 3);
  const std::vector<Phenomenon> kinds = {Phenomenon::kNumberError, Phenomenon::kNegation};
  int applied = 0;
  for (const auto& s : sentences) {
    try {
      const auto r = menli::perturb_text(s, kinds, lex(), 9);
      EXPECT_EQ(menli::apply_edits(r.original, r.edits), r.perturbed);
      EXPECT_EQ(r.phenomena, kinds);
      ++applied;
    } catch (const menli::Error& e) {
      EXPECT_EQ(e.code(), menli::ErrorCode::kNotApplicable);
    }
  }
  EXPECT_GT(applied, 5);
}

TEST(Negation, EveryTableRuleRoundTrips) {
  std::map<std::string, std::string> first_target;
  for (const auto& rule : lex().negation_rules) first_target.emplace(rule.source, rule.target);
  for (const auto& rule : lex().negation_rules) {
    const std::string negated = "They " + rule.target + " go home.";
    EXPECT_EQ(menli::perturb_negation(tok(negated), lex()).perturbed,
              "They " + rule.source + " go home.")
        << rule.target;
  }
  for (const auto& [source, target] : first_target) {
    const std::string plain = "They " + source + " go home.";
    const auto neg = menli::perturb_negation(tok(plain), lex()).perturbed;
    EXPECT_EQ(neg, "They " + target + " go home.");
    EXPECT_EQ(menli::perturb_negation(tok(neg), lex()).perturbed, plain);
  }
}

TEST(Negation, DoSupport) {
  const std::map<std::string, std::string> cases = {
      {"She walks home.", "She doesn't walk home."},
      {"She walked home.", "She didn't walk home."},
      {"They walk home.", "They don't walk home."},
  };
  for (const auto& [plain, negated] : cases) {
    EXPECT_EQ(menli::perturb_negation(tok(plain), lex()).perturbed, negated);
    EXPECT_EQ(menli::perturb_negation(tok(negated), lex()).perturbed, plain);
  }
  EXPECT_EQ(menli::perturb_negation(tok("She does not walk home."), lex()).perturbed,
            "She walks home.");
}

TEST(Negation, NotApplicableWithoutVerb) {
  try {
    menli::perturb_negation(tok("Green apples, red apples."), lex());
    FAIL();
  } catch (const menli::Error& e) {
    EXPECT_EQ(e.code(), menli::ErrorCode::kNotApplicable);
  }
}

TEST(Omission, NeedsFiveWords) {
  menli::Rng rng(1);
  EXPECT_THROW(menli::perturb_omission(tok("The cat sat down."), rng), menli::Error);
  const auto s = tok("The cat sat down on the mat.");
  const auto r = menli::perturb_omission(s, rng);
  EXPECT_EQ(invariants::check(Phenomenon::kOmission, s, r, lex()), "");
}

TEST(Number, DatesUntouched) {
  const auto s = tok("In May 2019 the firm earned 42.5 million and hired 1,200 people.");
  menli::Rng rng(4);
  const auto r = menli::perturb_number(s, rng);
  EXPECT_NE(r.perturbed.find("May 2019"), std::string::npos);
  EXPECT_EQ(invariants::check(Phenomenon::kNumberError, s, r, lex()), "");
  menli::Rng rng2(4);
  EXPECT_THROW(menli::perturb_number(tok("It happened in 1999."), rng2), menli::Error);
}

TEST(Svd, Involution) {
  for (const std::string s : {"The dogs are hungry.", "She has a car.", "He was late."}) {
    const auto once = menli::perturb_svd(tok(s), lex());
    EXPECT_NE(once.perturbed, s);
    EXPECT_EQ(menli::perturb_svd(tok(once.perturbed), lex()).perturbed, s);
  }
}

TEST(Name, KeepsGender) {
  const auto& females = lex().female_names;
  ASSERT_FALSE(females.empty());
  const auto s = tok(females.front() + " met the manager yesterday.");
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    menli::Rng rng(seed);
    const auto r = menli::perturb_name(s, lex(), rng);
    EXPECT_EQ(invariants::check(Phenomenon::kNameError, s, r, lex()), "");
    seen.insert(r.perturbed);
  }
  EXPECT_GT(seen.size(), 1u);
}

TEST(Pronoun, EveryCoveredPronounReplaced) {
  const auto s = tok("He told them that she would call him.");
  menli::Rng rng(2);
  const auto r = menli::perturb_pronoun(s, lex(), rng);
  EXPECT_EQ(invariants::check(Phenomenon::kPronounError, s, r, lex()), "");
}

}  // namespace
