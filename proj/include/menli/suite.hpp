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

#ifndef MENLI_SUITE_HPP_
#define MENLI_SUITE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "menli/lexicon.hpp"
#include "menli/perturb.hpp"

namespace menli {

enum class Setting { kRefBased, kRefFree };
enum class ParaSource { kOriginal, kBacktranslation, kNumberWords };

/// Where cand_para comes from in ref-based suites. kNumberWordsAuto uses the
/// supplied (backtranslated) paraphrase, except for suites containing a
/// number error, where cand_para is the reference with numbers spelled out.
enum class ParaMode { kOriginal, kBacktranslation, kNumberWordsAuto };

std::string_view to_string(Setting s);
std::string_view to_string(ParaSource s);
std::string_view to_string(ParaMode m);
std::optional<Setting> parse_setting(std::string_view s);
std::optional<ParaMode> parse_para_mode(std::string_view s);

struct SeedRecord {
  std::string id;
  std::optional<std::string> src;
  std::string ref;
  std::optional<std::string> para;
  std::optional<std::string> pivot_r;
  std::optional<std::pair<std::string, std::string>> lang_pair;
};

struct AdversarialInstance {
  std::string id;  // "<seed_id>:<label>"
  std::vector<Phenomenon> phenomena;
  Setting setting = Setting::kRefBased;
  std::string anchor;     // ref, or src when ref-free
  std::string cand_para;  // paraphrase, or ref when ref-free
  std::string cand_adv;
  std::string seed_id;
  // Text the perturbation was applied to: ref, or pivot_r when ref-free.
  std::string perturbation_source;
  std::vector<Edit> edits;
  std::uint64_t rng_seed = 0;
  ParaSource para_source = ParaSource::kOriginal;

  std::string label() const { return label_of(phenomena); }
};

struct GenerationConfig {
  std::uint64_t seed = 0;
  std::vector<std::vector<Phenomenon>> phenomena;
  Setting setting = Setting::kRefBased;
  ParaMode para_mode = ParaMode::kOriginal;
};

struct TestSuite {
  std::string name;
  GenerationConfig config;
  std::vector<AdversarialInstance> instances;
  // Label -> number of emitted instances / skipped seeds.
  std::map<std::string, std::size_t> counts;
  std::map<std::string, std::size_t> skipped;

  /// Throws kInvalidArgument when an instance or the counts are inconsistent.
  void validate() const;
};

/// Perturbs each seed's ref with each phenomenon (or composition). Seeds a
/// phenomenon does not apply to are skipped and tallied. Per-instance engines
/// are derived from (seed, seed id, label), so the result does not depend on
/// thread scheduling.
TestSuite build_ref_based(std::span<const SeedRecord> seeds,
                          std::span<const std::vector<Phenomenon>> phenomena,
                          const Lexicon& lex, std::uint64_t seed,
                          ParaMode para_mode, std::string name = "");

/// anchor = src, good candidate = ref, cand_adv = perturbed pivot_r.
TestSuite build_ref_free(std::span<const SeedRecord> seeds,
                         std::span<const std::vector<Phenomenon>> phenomena,
                         const Lexicon& lex, std::uint64_t seed,
                         std::string name = "");

struct ReferenceSelection {
  std::size_t index = 0;
  std::string pivot_r;
  std::vector<std::string> remaining;
};

/// Picks the reference with the highest mean ROUGE-L F1 against the other
/// ten (lowest index on ties). Requires exactly 11 references.
ReferenceSelection select_summeval_reference(std::span<const std::string> refs);

/// Spells out non-date numbers: "$100 billion" -> "one hundred billion
/// dollars", "5.3%" -> "five point three percent".
std::string verbalize_numbers(std::string_view text);

std::uint64_t derive_seed(std::uint64_t global, std::string_view seed_id,
                          std::string_view label);

struct PhenomenonStats {
  std::size_t count = 0;
  std::size_t skipped = 0;
  double mean_para_distance = 0.0;
  double mean_adv_distance = 0.0;
};

struct SuiteStats {
  std::map<std::string, PhenomenonStats> per_phenomenon;
  std::size_t total = 0;
  double mean_para_distance = 0.0;
  double mean_adv_distance = 0.0;
};

/// Counts and mean normalized edit distances from the perturbation source
/// (ref, or pivot_r when ref-free) to cand_para and cand_adv.
SuiteStats suite_stats(const TestSuite& suite);

std::vector<SeedRecord> read_seeds(const std::filesystem::path& path);
void write_seeds(std::span<const SeedRecord> seeds,
                 const std::filesystem::path& path);
TestSuite read_suite(const std::filesystem::path& path);
void write_suite(const TestSuite& suite, const std::filesystem::path& path);

}  // namespace menli

#endif  // MENLI_SUITE_HPP_
