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

#include "menli/suite.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>
#include <variant>

#include "jsonl.hpp"
#include "menli/error.hpp"
#include "menli/textops.hpp"

namespace menli {

using nlohmann::json;

namespace {

constexpr std::string_view kSuiteFormat = "menli-suite";

struct Skip {
  std::string label;
};
using Outcome = std::variant<AdversarialInstance, Skip>;

bool contains_number_error(std::span<const Phenomenon> kinds) {
  return std::find(kinds.begin(), kinds.end(), Phenomenon::kNumberError) !=
         kinds.end();
}

// Runs fn(i) for i in [0, n) on a small pool; results land by index.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_unique_ids(std::span<const SeedRecord> seeds) {
  std::set<std::string> seen;
  for (const auto& s : seeds) {
    if (s.ref.empty()) {
      throw Error(ErrorCode::kMissingField, "seed '" + s.id + "' has no ref");
    }
    if (!seen.insert(s.id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate seed id '" + s.id + "'");
    }
  }
}

TestSuite assemble(std::string name, GenerationConfig config,
                   std::vector<Outcome> outcomes) {
  TestSuite suite;
  suite.name = std::move(name);
  suite.config = std::move(config);
  for (const auto& kinds : suite.config.phenomena) {
    suite.counts[label_of(kinds)] = 0;
    suite.skipped[label_of(kinds)] = 0;
  }
  for (auto& o : outcomes) {
    if (auto* inst = std::get_if<AdversarialInstance>(&o)) {
      ++suite.counts[inst->label()];
      suite.instances.push_back(std::move(*inst));
    } else {
      ++suite.skipped[std::get<Skip>(o).label];
    }
  }
  suite.validate();
  return suite;
}

json edits_to_json(const std::vector<Edit>& edits) {
  json out = json::array();
  for (const auto& e : edits) {
    out.push_back(json::array({e.begin, e.end, e.replacement, e.stage}));
  }
  return out;
}

std::vector<Edit> edits_from_json(const json& j) {
  std::vector<Edit> out;
  for (const auto& e : j) {
    out.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                   e.at(2).get<std::string>(), e.at(3).get<std::size_t>()});
  }
  return out;
}

std::optional<std::string> opt_string(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

}  // namespace

std::string_view to_string(Setting s) {
  return s == Setting::kRefBased ? "ref-based" : "ref-free";
}

std::string_view to_string(ParaSource s) {
  switch (s) {
    case ParaSource::kOriginal: return "original";
    case ParaSource::kBacktranslation: return "backtranslation";
    case ParaSource::kNumberWords: return "number-words";
  }
  return "original";
}

std::string_view to_string(ParaMode m) {
  switch (m) {
    case ParaMode::kOriginal: return "original";
    case ParaMode::kBacktranslation: return "backtranslation";
    case ParaMode::kNumberWordsAuto: return "number-words";
  }
  return "original";
}

std::optional<Setting> parse_setting(std::string_view s) {
  if (s == "ref-based") return Setting::kRefBased;
  if (s == "ref-free") return Setting::kRefFree;
  return std::nullopt;
}

std::optional<ParaMode> parse_para_mode(std::string_view s) {
  if (s == "original") return ParaMode::kOriginal;
  if (s == "backtranslation") return ParaMode::kBacktranslation;
  if (s == "number-words") return ParaMode::kNumberWordsAuto;
  return std::nullopt;
}

void TestSuite::validate() const {
  std::set<std::string> ids;
  std::map<std::string, std::size_t> tally;
  for (const auto& inst : instances) {
    if (!ids.insert(inst.id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate instance id " + inst.id);
    }
    if (inst.cand_adv == inst.cand_para || inst.cand_adv == inst.anchor) {
      throw Error(ErrorCode::kInvalidArgument,
                  "instance " + inst.id + ": cand_adv equals anchor or cand_para");
    }
    if (apply_edits(inst.perturbation_source, inst.edits) != inst.cand_adv) {
      throw Error(ErrorCode::kInvalidArgument,
                  "instance " + inst.id + ": edits do not reproduce cand_adv");
    }
    ++tally[inst.label()];
  }
  for (const auto& [label, n] : counts) {
    const auto it = tally.find(label);
    if ((it == tally.end() ? 0 : it->second) != n) {
      throw Error(ErrorCode::kInvalidArgument, "count mismatch for " + label);
    }
  }
  for (const auto& [label, n] : tally) {
    if (counts.count(label) == 0) {
      throw Error(ErrorCode::kInvalidArgument, "uncounted label " + label);
    }
  }
}

std::uint64_t derive_seed(std::uint64_t global, std::string_view seed_id,
                          std::string_view label) {
  std::uint64_t h = text::fnv1a(std::to_string(global));
  h = text::fnv1a("\x1f", h);
  h = text::fnv1a(seed_id, h);
  h = text::fnv1a("\x1f", h);
  return text::fnv1a(label, h);
}

std::string verbalize_numbers(std::string_view input) {
  const auto s = text::tokenize(input);
  const auto& toks = s.tokens;
  static const std::set<std::string> kScales = {"thousand", "million", "billion",
                                                "trillion"};
  std::vector<Edit> edits;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind != text::TokenKind::kNumber || is_date_number(s, i)) continue;
    std::string words;
    try {
      words = text::number_to_words(toks[i].surface);
    } catch (const Error&) {
      continue;
    }
    const bool dollar = i > 0 && toks[i - 1].surface == "$" &&
                        toks[i - 1].end == toks[i].begin;
    const bool percent = i + 1 < toks.size() && toks[i + 1].surface == "%" &&
                         toks[i + 1].begin == toks[i].end;
    const std::size_t begin = dollar ? toks[i - 1].begin : toks[i].begin;
    if (percent) {
      edits.push_back({begin, toks[i + 1].end, words + " percent", 0});
    } else if (dollar && i + 1 < toks.size() &&
               kScales.count(text::to_lower(toks[i + 1].surface)) != 0) {
      edits.push_back({begin, toks[i + 1].end,
                       words + " " + toks[i + 1].surface + " dollars", 0});
    } else if (dollar) {
      edits.push_back({begin, toks[i].end, words + " dollars", 0});
    } else {
      edits.push_back({begin, toks[i].end, words, 0});
    }
  }
  return apply_edits(input, edits);
}

TestSuite build_ref_based(std::span<const SeedRecord> seeds,
                          std::span<const std::vector<Phenomenon>> phenomena,
                          const Lexicon& lex, std::uint64_t seed,
                          ParaMode para_mode, std::string name) {
  check_unique_ids(seeds);
  for (const auto& s : seeds) {
    for (const auto& kinds : phenomena) {
      const bool verbalized =
          para_mode == ParaMode::kNumberWordsAuto && contains_number_error(kinds);
      if (!verbalized && !s.para) {
        throw Error(ErrorCode::kMissingParaphrase,
                    "seed '" + s.id + "' has no para for " + label_of(kinds));
      }
    }
  }
  const std::size_t per_seed = phenomena.size();
  std::vector<Outcome> outcomes(seeds.size() * per_seed);
  parallel_for(seeds.size(), [&](std::size_t i) {
    const SeedRecord& s = seeds[i];
    for (std::size_t k = 0; k < per_seed; ++k) {
      const auto& kinds = phenomena[k];
      const auto label = label_of(kinds);
      const auto instance_seed = derive_seed(seed, s.id, label);
      PerturbationResult result;
      try {
        result = perturb_text(s.ref, kinds, lex, instance_seed);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNotApplicable) throw;
        outcomes[i * per_seed + k] = Skip{label};
        continue;
      }
      AdversarialInstance inst;
      inst.id = s.id + ":" + label;
      inst.phenomena = kinds;
      inst.setting = Setting::kRefBased;
      inst.anchor = s.ref;
      inst.seed_id = s.id;
      inst.perturbation_source = s.ref;
      inst.cand_adv = result.perturbed;
      inst.edits = std::move(result.edits);
      inst.rng_seed = result.rng_seed;
      if (para_mode == ParaMode::kNumberWordsAuto && contains_number_error(kinds)) {
        inst.cand_para = verbalize_numbers(s.ref);
        inst.para_source = ParaSource::kNumberWords;
      } else {
        inst.cand_para = *s.para;
        inst.para_source = para_mode == ParaMode::kOriginal
                               ? ParaSource::kOriginal
                               : ParaSource::kBacktranslation;
      }
      if (inst.cand_adv == inst.cand_para) {
        outcomes[i * per_seed + k] = Skip{label};
        continue;
      }
      outcomes[i * per_seed + k] = std::move(inst);
    }
  });
  GenerationConfig config{seed, {phenomena.begin(), phenomena.end()},
                          Setting::kRefBased, para_mode};
  return assemble(std::move(name), std::move(config), std::move(outcomes));
}

TestSuite build_ref_free(std::span<const SeedRecord> seeds,
                         std::span<const std::vector<Phenomenon>> phenomena,
                         const Lexicon& lex, std::uint64_t seed,
                         std::string name) {
  check_unique_ids(seeds);
  for (const auto& s : seeds) {
    if (!s.src || s.src->empty()) {
      throw Error(ErrorCode::kMissingField, "seed '" + s.id + "' has no src");
    }
    if (!s.pivot_r || s.pivot_r->empty()) {
      throw Error(ErrorCode::kMissingField, "seed '" + s.id + "' has no pivot_r");
    }
  }
  const std::size_t per_seed = phenomena.size();
  std::vector<Outcome> outcomes(seeds.size() * per_seed);
  parallel_for(seeds.size(), [&](std::size_t i) {
    const SeedRecord& s = seeds[i];
    for (std::size_t k = 0; k < per_seed; ++k) {
      const auto& kinds = phenomena[k];
      const auto label = label_of(kinds);
      const auto instance_seed = derive_seed(seed, s.id, label);
      PerturbationResult result;
      try {
        result = perturb_text(*s.pivot_r, kinds, lex, instance_seed);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNotApplicable) throw;
        outcomes[i * per_seed + k] = Skip{label};
        continue;
      }
      AdversarialInstance inst;
      inst.id = s.id + ":" + label;
      inst.phenomena = kinds;
      inst.setting = Setting::kRefFree;
      inst.anchor = *s.src;
      inst.cand_para = s.ref;
      inst.cand_adv = result.perturbed;
      inst.seed_id = s.id;
      inst.perturbation_source = *s.pivot_r;
      inst.edits = std::move(result.edits);
      inst.rng_seed = result.rng_seed;
      inst.para_source = ParaSource::kOriginal;
      if (inst.cand_adv == inst.cand_para || inst.cand_adv == inst.anchor) {
        outcomes[i * per_seed + k] = Skip{label};
        continue;
      }
      outcomes[i * per_seed + k] = std::move(inst);
    }
  });
  GenerationConfig config{seed, {phenomena.begin(), phenomena.end()},
                          Setting::kRefFree, ParaMode::kOriginal};
  return assemble(std::move(name), std::move(config), std::move(outcomes));
}

ReferenceSelection select_summeval_reference(std::span<const std::string> refs) {
  if (refs.size() != 11) {
    throw Error(ErrorCode::kWrongArity,
                "expected 11 references, got " + std::to_string(refs.size()));
  }
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < refs.size(); ++j) {
      if (i != j) total += text::rouge_l_f1(refs[i], refs[j]);
    }
    const double mean = total / static_cast<double>(refs.size() - 1);
    if (mean > best_score) {
      best_score = mean;
      best = i;
    }
  }
  ReferenceSelection out;
  out.index = best;
  out.pivot_r = refs[best];
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i != best) out.remaining.push_back(refs[i]);
  }
  return out;
}

SuiteStats suite_stats(const TestSuite& suite) {
  SuiteStats stats;
  std::map<std::string, std::pair<double, double>> sums;
  double para_sum = 0.0;
  double adv_sum = 0.0;
  for (const auto& inst : suite.instances) {
    const double dp = text::levenshtein_normalized(inst.perturbation_source, inst.cand_para);
    const double da = text::levenshtein_normalized(inst.perturbation_source, inst.cand_adv);
    auto& st = stats.per_phenomenon[inst.label()];
    ++st.count;
    sums[inst.label()].first += dp;
    sums[inst.label()].second += da;
    para_sum += dp;
    adv_sum += da;
  }
  for (const auto& [label, n] : suite.skipped) stats.per_phenomenon[label].skipped = n;
  for (auto& [label, st] : stats.per_phenomenon) {
    if (st.count == 0) continue;
    st.mean_para_distance = sums[label].first / static_cast<double>(st.count);
    st.mean_adv_distance = sums[label].second / static_cast<double>(st.count);
  }
  stats.total = suite.instances.size();
  if (stats.total > 0) {
    stats.mean_para_distance = para_sum / static_cast<double>(stats.total);
    stats.mean_adv_distance = adv_sum / static_cast<double>(stats.total);
  }
  return stats;
}

std::vector<SeedRecord> read_seeds(const std::filesystem::path& path) {
  std::vector<SeedRecord> out;
  for (const auto& line : jsonl::read(path, kSuiteFormat)) {
    const json& j = line.value;
    try {
      SeedRecord s;
      s.id = j.at("id").is_string() ? j.at("id").get<std::string>()
                                    : j.at("id").dump();
      s.ref = j.at("ref").get<std::string>();
      s.src = opt_string(j, "src");
      s.para = opt_string(j, "para");
      s.pivot_r = opt_string(j, "pivot_r");
      if (j.contains("lang_pair") && j["lang_pair"].is_array()) {
        s.lang_pair = {j["lang_pair"].at(0).get<std::string>(),
                       j["lang_pair"].at(1).get<std::string>()};
      }
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, path.string() + ":" +
                                              std::to_string(line.number) +
                                              ": " + e.what());
    }
  }
  return out;
}

void write_seeds(std::span<const SeedRecord> seeds,
                 const std::filesystem::path& path) {
  std::vector<json> records;
  for (const auto& s : seeds) {
    json j = {{"id", s.id}, {"ref", s.ref}};
    if (s.src) j["src"] = *s.src;
    if (s.para) j["para"] = *s.para;
    if (s.pivot_r) j["pivot_r"] = *s.pivot_r;
    if (s.lang_pair) j["lang_pair"] = {s.lang_pair->first, s.lang_pair->second};
    records.push_back(std::move(j));
  }
  const json head = jsonl::header(kSuiteFormat);
  jsonl::write(path, records, &head);
}

void write_suite(const TestSuite& suite, const std::filesystem::path& path) {
  json head = jsonl::header(kSuiteFormat);
  head["name"] = suite.name;
  json labels = json::array();
  for (const auto& kinds : suite.config.phenomena) labels.push_back(label_of(kinds));
  head["config"] = {{"seed", suite.config.seed},
                    {"phenomena", labels},
                    {"setting", to_string(suite.config.setting)},
                    {"para_mode", to_string(suite.config.para_mode)}};
  head["counts"] = suite.counts;
  head["skipped"] = suite.skipped;
  std::vector<json> records;
  records.reserve(suite.instances.size());
  for (const auto& inst : suite.instances) {
    records.push_back({{"id", inst.id},
                       {"phenomenon", inst.label()},
                       {"setting", to_string(inst.setting)},
                       {"anchor", inst.anchor},
                       {"cand_para", inst.cand_para},
                       {"cand_adv", inst.cand_adv},
                       {"seed_id", inst.seed_id},
                       {"para_source", to_string(inst.para_source)},
                       {"perturbation_meta",
                        {{"source", inst.perturbation_source},
                         {"edits", edits_to_json(inst.edits)},
                         {"rng_seed", inst.rng_seed}}}});
  }
  jsonl::write(path, records, &head);
}

TestSuite read_suite(const std::filesystem::path& path) {
  json head;
  const auto lines = jsonl::read(path, kSuiteFormat, true, &head);
  TestSuite suite;
  try {
    suite.name = head.value("name", "");
    if (head.contains("config")) {
      const auto& c = head["config"];
      suite.config.seed = c.value("seed", std::uint64_t{0});
      for (const auto& l : c.value("phenomena", json::array())) {
        const auto kinds = parse_label(l.get<std::string>());
        if (!kinds) throw Error(ErrorCode::kParseError, "unknown phenomenon " + l.dump());
        suite.config.phenomena.push_back(*kinds);
      }
      suite.config.setting =
          parse_setting(c.value("setting", "ref-based")).value_or(Setting::kRefBased);
      suite.config.para_mode =
          parse_para_mode(c.value("para_mode", "original")).value_or(ParaMode::kOriginal);
    }
    if (head.contains("skipped")) {
      suite.skipped = head["skipped"].get<std::map<std::string, std::size_t>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": bad header: " + e.what());
  }
  for (const auto& line : lines) {
    const json& j = line.value;
    try {
      AdversarialInstance inst;
      inst.id = j.at("id").get<std::string>();
      const auto kinds = parse_label(j.at("phenomenon").get<std::string>());
      if (!kinds) throw Error(ErrorCode::kParseError, "unknown phenomenon");
      inst.phenomena = *kinds;
      inst.setting = parse_setting(j.at("setting").get<std::string>())
                         .value_or(Setting::kRefBased);
      inst.anchor = j.at("anchor").get<std::string>();
      inst.cand_para = j.at("cand_para").get<std::string>();
      inst.cand_adv = j.at("cand_adv").get<std::string>();
      inst.seed_id = j.value("seed_id", "");
      const auto ps = j.value("para_source", "original");
      inst.para_source = ps == "backtranslation" ? ParaSource::kBacktranslation
                         : ps == "number-words"  ? ParaSource::kNumberWords
                                                 : ParaSource::kOriginal;
      const auto& meta = j.at("perturbation_meta");
      inst.perturbation_source = meta.at("source").get<std::string>();
      inst.edits = edits_from_json(meta.at("edits"));
      inst.rng_seed = meta.value("rng_seed", std::uint64_t{0});
      ++suite.counts[inst.label()];
      suite.instances.push_back(std::move(inst));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, path.string() + ":" +
                                              std::to_string(line.number) +
                                              ": " + e.what());
    }
  }
  for (const auto& [label, n] : suite.skipped) suite.counts.try_emplace(label, 0);
  suite.validate();
  return suite;
}

}  // namespace menli
