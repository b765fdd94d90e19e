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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "menli/combine.hpp"
#include "menli/error.hpp"
#include "menli/lexicon.hpp"
#include "menli/nli.hpp"
#include "menli/score_file.hpp"
#include "menli/scorer_io.hpp"
#include "table.hpp"

namespace menli::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string_view category_name(stats::Category c) {
  return c == stats::Category::kAdversarial ? "adversarial" : "standard";
}

std::string valid_phenomena() {
  std::string out;
  for (Phenomenon p : kAllPhenomena) {
    if (!out.empty()) out += ", ";
    out += name_of(p);
  }
  return out;
}

// A dataset with its parsed contents.
struct Loaded {
  DatasetSpec spec;
  std::optional<TestSuite> suite;
  std::vector<stats::HumanJudgment> judgments;
};

std::vector<Loaded> load_datasets(const std::vector<DatasetSpec>& specs) {
  if (specs.empty()) throw Error(ErrorCode::kUsage, "no datasets given");
  std::vector<Loaded> out;
  std::set<std::string> names;
  for (const auto& spec : specs) {
    if (spec.name.empty() || spec.name.find('/') != std::string::npos) {
      throw Error(ErrorCode::kUsage, "dataset names must be non-empty and free of '/'");
    }
    if (!names.insert(spec.name).second) {
      throw Error(ErrorCode::kUsage, "dataset '" + spec.name + "' given twice");
    }
    Loaded d{spec, std::nullopt, {}};
    if (spec.kind == stats::Category::kAdversarial) {
      d.suite = read_suite(spec.path);
    } else {
      d.judgments = stats::read_judgments(spec.path);
    }
    out.push_back(std::move(d));
  }
  return out;
}

struct DatasetResult {
  json detail;
  double performance = 0.0;
};

// Accuracy on a suite, or correlation with judgments.
DatasetResult evaluate_dataset(const Loaded& d, const ScoreBatch& batch) {
  DatasetResult r;
  if (d.suite) {
    std::map<std::string, double> para;
    std::map<std::string, double> adv;
    for (const auto& inst : d.suite->instances) {
      para[inst.id] = batch.at(inst.id + "#para");
      adv[inst.id] = batch.at(inst.id + "#adv");
    }
    const ScoreBatch pb(batch.metric_id(), para);
    const ScoreBatch ab(batch.metric_id(), adv);
    const auto acc = stats::preference_accuracy(pb, ab);
    const auto ed = stats::edit_distance_analysis(*d.suite, pb, ab);
    json groups = json::object();
    for (const auto& [label, g] : acc.per_group) {
      groups[label] = {{"accuracy", g.accuracy()},
                       {"correct", g.correct},
                       {"ties", g.ties},
                       {"total", g.total}};
    }
    r.performance = acc.accuracy();
    r.detail = {{"dataset", d.spec.name},
                {"kind", "adversarial"},
                {"accuracy", acc.accuracy()},
                {"correct", acc.overall.correct},
                {"ties", acc.overall.ties},
                {"total", acc.overall.total},
                {"per_phenomenon", groups},
                {"edit_distance",
                 {{"failures", ed.failures},
                  {"successes", ed.successes},
                  {"mean_failure", nullable(ed.mean_failure)},
                  {"mean_success", nullable(ed.mean_success)},
                  {"gap", nullable(ed.gap)}}}};
    return r;
  }
  // Multi-reference scores arrive as "<key>@<k>" and are aggregated first.
  ScoreBatch metric = batch;
  const auto& ids = batch.ids();
  if (std::any_of(ids.begin(), ids.end(),
                  [](const std::string& id) { return id.find('@') != std::string::npos; })) {
    std::map<std::string, std::vector<double>> per_ref;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto at = ids[i].rfind('@');
      per_ref[ids[i].substr(0, at)].push_back(batch.values()(static_cast<Eigen::Index>(i)));
    }
    metric = stats::multi_ref_aggregate(per_ref, d.spec.aggregate, batch.metric_id());
  }
  const auto c = d.spec.level == "system"
                     ? stats::system_level(metric, d.judgments, d.spec.method)
                     : stats::segment_level(metric, d.judgments, d.spec.method);
  r.performance = c.value;
  r.detail = {{"dataset", d.spec.name},
              {"kind", "standard"},
              {"level", d.spec.level},
              {"method", std::string(stats::to_string(d.spec.method))},
              {"correlation", c.value},
              {"n", c.n},
              {"dropped", c.dropped},
              {"degenerate", c.degenerate}};
  return r;
}

json win_table_json(const stats::WinTable& table) {
  json rows = json::array();
  for (const auto& [s, w] : table) {
    rows.push_back({{"strategy", s.name()},
                    {"adversarial", w.adversarial},
                    {"standard", w.standard}});
  }
  return rows;
}

// Performance of every candidate strategy on every (dataset, metric) cell.
std::vector<stats::StrategyResult> strategy_grid(
    const std::vector<Loaded>& datasets,
    const std::map<std::string, std::map<std::string, ScoreFile>>& nli_files,
    std::span<const nli::PoolingStrategy> candidates) {
  std::vector<stats::StrategyResult> grid;
  for (const auto& [metric, per_dataset] : nli_files) {
    for (const auto& d : datasets) {
      const auto it = per_dataset.find(d.spec.name);
      if (it == per_dataset.end()) continue;
      for (const auto& s : candidates) {
        grid.push_back({s, d.spec.name, metric, d.spec.kind,
                        evaluate_dataset(d, to_batch(it->second, s)).performance});
      }
    }
  }
  return grid;
}

std::vector<nli::PoolingStrategy> candidate_strategies(
    const std::map<std::string, std::map<std::string, ScoreFile>>& nli_files) {
  for (const auto& [metric, per_dataset] : nli_files) {
    for (const auto& [name, f] : per_dataset) {
      if (!f.has_backward()) return nli::ref_free_summarization_strategies();
    }
  }
  return nli::all_strategies();
}

struct PoolingPlan {
  json report = nullptr;
  std::optional<nli::PoolingStrategy> global;
  std::map<std::string, nli::PoolingStrategy> per_dataset;
};

PoolingPlan plan_pooling(const std::string& mode, const std::vector<Loaded>& datasets,
                         const std::map<std::string, std::map<std::string, ScoreFile>>& nli_files,
                         bool allow_loo) {
  PoolingPlan plan;
  if (nli_files.empty()) return plan;
  if (mode != "auto" && mode != "auto-loo") {
    plan.global = nli::PoolingStrategy::parse(mode);
    if (!plan.global) {
      throw Error(ErrorCode::kUsage,
                  "unknown pooling '" + mode + "'; use auto, auto-loo or <direction>:<formula>");
    }
    plan.report = {{"mode", "fixed"}, {"selected", plan.global->name()}};
    return plan;
  }
  if (mode == "auto-loo" && !allow_loo) {
    throw Error(ErrorCode::kUsage, "auto-loo is not available for this command");
  }
  const auto candidates = candidate_strategies(nli_files);
  const auto grid = strategy_grid(datasets, nli_files, candidates);
  const auto table = stats::winning_frequency(grid, candidates);
  plan.global = stats::select_strategy(table, candidates);
  json names = json::array();
  for (const auto& s : candidates) names.push_back(s.name());
  json cells = json::array();
  for (const auto& r : grid) {
    cells.push_back({{"strategy", r.strategy.name()},
                     {"dataset", r.dataset},
                     {"nli_metric", r.nli_metric},
                     {"category", std::string(category_name(r.category))},
                     {"performance", r.performance}});
  }
  plan.report = {{"mode", mode},
                 {"candidates", names},
                 {"selected", plan.global->name()},
                 {"win_table", win_table_json(table)},
                 {"grid", cells}};
  if (mode == "auto-loo") {
    json loo = json::array();
    for (const auto& e : stats::leave_one_out_report(grid, candidates)) {
      plan.per_dataset.emplace(e.dataset, e.loo_strategy);
      loo.push_back({{"dataset", e.dataset},
                     {"nli_metric", e.nli_metric},
                     {"category", std::string(category_name(e.category))},
                     {"global_strategy", e.global_strategy.name()},
                     {"loo_strategy", e.loo_strategy.name()},
                     {"global_performance", e.global_performance},
                     {"loo_performance", e.loo_performance},
                     {"delta", e.delta()}});
    }
    plan.report["leave_one_out"] = loo;
  }
  return plan;
}

void write_report(const json& report, const fs::path& out_dir, std::ostream& log) {
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  write_if_changed(out_dir / "report.json", report.dump(2) + "\n");
  write_if_changed(out_dir / "report.txt", render_text(report));
  const auto plots = render_svg(report, out_dir);
  log << "wrote " << (out_dir / "report.json").string() << ", "
      << (out_dir / "report.txt").string() << " and " << plots.size() << " plot(s)\n";
}

std::vector<scorer::ScoreRequest> suite_requests(const TestSuite& suite, scorer::Mode mode) {
  std::vector<scorer::ScoreRequest> out;
  for (const auto& inst : suite.instances) {
    out.push_back({inst.id + "#para", inst.anchor, inst.cand_para, mode});
    out.push_back({inst.id + "#adv", inst.anchor, inst.cand_adv, mode});
  }
  return out;
}

std::vector<scorer::ScoreRequest> pair_requests(const fs::path& path, scorer::Mode mode) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<scorer::ScoreRequest> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json::parse(line);
      out.push_back({j.at("instance_id").get<std::string>(), j.at("text_a").get<std::string>(),
                     j.at("text_b").get<std::string>(), mode});
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError,
                  path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

void write_if_changed(const fs::path& path, const std::string& content) {
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (ss.str() == content) return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

std::vector<std::vector<Phenomenon>> parse_phenomena(const std::string& list) {
  std::vector<std::vector<Phenomenon>> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (item.empty()) continue;
    auto kinds = parse_label(item);
    if (!kinds) {
      throw Error(ErrorCode::kUsage, "unknown phenomenon in '" + item +
                                         "'; valid names: " + valid_phenomena());
    }
    out.push_back(std::move(*kinds));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kUsage, "no phenomena given; valid names: " + valid_phenomena());
  }
  return out;
}

json cmd_generate(const GenerateOptions& opt, std::ostream& log) {
  if (opt.seeds.empty() || opt.out.empty()) {
    throw Error(ErrorCode::kUsage, "generate needs --seeds and --out");
  }
  if (opt.phenomena.empty()) {
    throw Error(ErrorCode::kUsage, "no phenomena given; valid names: " + valid_phenomena());
  }
  std::optional<Lexicon> custom;
  if (!opt.lexicon.empty()) custom = Lexicon::load(opt.lexicon);
  const Lexicon& lex = custom ? *custom : Lexicon::builtin();
  const auto seeds = read_seeds(opt.seeds);
  const auto name = opt.name.empty() ? opt.out.stem().string() : opt.name;
  const TestSuite suite =
      opt.setting == Setting::kRefBased
          ? build_ref_based(seeds, opt.phenomena, lex, opt.seed, opt.para_mode, name)
          : build_ref_free(seeds, opt.phenomena, lex, opt.seed, name);
  suite.validate();
  write_suite(suite, opt.out);

  log << "suite " << name << ": " << suite.instances.size() << " instances from "
      << seeds.size() << " seeds\n";
  std::set<std::string> labels;
  for (const auto& [l, n] : suite.counts) labels.insert(l);
  for (const auto& [l, n] : suite.skipped) labels.insert(l);
  Table table({"phenomenon", "count", "skipped"});
  json counts = json::object();
  json skipped = json::object();
  for (const auto& l : labels) {
    const auto c = suite.counts.contains(l) ? suite.counts.at(l) : 0;
    const auto s = suite.skipped.contains(l) ? suite.skipped.at(l) : 0;
    counts[l] = c;
    skipped[l] = s;
    table.add({l, std::to_string(c), std::to_string(s)});
  }
  log << table.render("  ");
  return {{"command", "generate"},
          {"out", opt.out.string()},
          {"instances", suite.instances.size()},
          {"counts", counts},
          {"skipped", skipped}};
}

json cmd_score(const ScoreOptions& opt, std::ostream& log) {
  if (opt.out.empty()) throw Error(ErrorCode::kUsage, "score needs --out");
  if (opt.suite.empty() == opt.pairs.empty()) {
    throw Error(ErrorCode::kUsage, "score needs exactly one of --suite or --pairs");
  }
  if (opt.metric.empty() == opt.command.empty()) {
    throw Error(ErrorCode::kUsage, "score needs exactly one of --metric or --command");
  }
  const auto mode = !opt.nli ? scorer::Mode::kScalar
                    : opt.ref_free_summarization ? scorer::Mode::kNliForward
                                                 : scorer::Mode::kNliBoth;
  const auto requests = !opt.suite.empty() ? suite_requests(read_suite(opt.suite), mode)
                                           : pair_requests(opt.pairs, mode);
  if (requests.empty()) throw Error(ErrorCode::kEmptyInput, "nothing to score");

  ScoreFile file;
  file.metric_id = !opt.metric_id.empty() ? opt.metric_id
                   : !opt.metric.empty()  ? opt.metric
                                          : "external";
  scorer::ResponseMap responses;
  bool cached = false;
  if (!opt.metric.empty() && scorer::is_builtin(opt.metric) && opt.command.empty()) {
    if (opt.nli) {
      throw Error(ErrorCode::kUsage,
                  "builtin scorer '" + opt.metric + "' produces scalars; drop --nli");
    }
    responses = scorer::builtin_scorer(opt.metric, requests);
  } else {
    std::string tpl = opt.command;
    if (tpl.empty()) {
      const auto it = opt.scorers.find(opt.metric);
      if (it == opt.scorers.end()) {
        std::string known;
        for (const auto& n : scorer::builtin_names()) known += " " + n;
        for (const auto& [n, t] : opt.scorers) known += " " + n;
        throw Error(ErrorCode::kUnknownScorer,
                    "unknown scorer '" + opt.metric + "'; known:" + known);
      }
      tpl = it->second;
    }
    const fs::path workdir =
        opt.workdir.empty() ? fs::path(opt.out.string() + ".work") : opt.workdir;
    const auto timeout = std::chrono::milliseconds(
        static_cast<std::int64_t>(std::llround(opt.timeout_seconds * 1000.0)));
    if (opt.line_mode) {
      scorer::LineScorer line(tpl, timeout);
      responses = line.score_all(requests);
    } else if (opt.shards > 1) {
      responses = scorer::run_sharded({tpl, timeout, true}, requests, opt.shards, workdir);
    } else {
      const fs::path in = workdir / "requests.jsonl";
      scorer::write_requests(requests, in);
      auto result =
          scorer::run_external_scorer({tpl, timeout, true}, in, workdir / "responses.jsonl");
      responses = std::move(result.values);
      cached = result.cached;
    }
  }
  for (const auto& [id, r] : responses) {
    if (r.scalar) file.scalars[id] = *r.scalar;
    if (r.forward) file.forward.emplace(id, *r.forward);
    if (r.backward) file.backward.emplace(id, *r.backward);
  }
  write_score_file(file, opt.out);
  log << "scored " << responses.size() << " candidates with " << file.metric_id
      << (cached ? " (cached responses)" : "") << " -> " << opt.out.string() << "\n";
  return {{"command", "score"},
          {"metric_id", file.metric_id},
          {"mode", std::string(scorer::to_string(mode))},
          {"responses", responses.size()},
          {"cached", cached},
          {"out", opt.out.string()}};
}

json cmd_evaluate(const EvaluateOptions& opt, std::ostream& log) {
  const auto datasets = load_datasets(opt.datasets);
  // metric id -> dataset -> file
  std::map<std::string, std::map<std::string, ScoreFile>> files;
  for (const auto& [name, paths] : opt.scores) {
    if (std::none_of(datasets.begin(), datasets.end(),
                     [&](const Loaded& d) { return d.spec.name == name; })) {
      throw Error(ErrorCode::kUsage, "scores given for unknown dataset '" + name + "'");
    }
    for (const auto& p : paths) {
      auto f = read_score_file(p);
      if (f.metric_id.empty()) throw Error(ErrorCode::kEmptyInput, p.string() + " is empty");
      const auto metric = f.metric_id;
      if (!files[metric].emplace(name, std::move(f)).second) {
        throw Error(ErrorCode::kUsage,
                    "two score files for metric '" + metric + "' on '" + name + "'");
      }
    }
  }
  if (files.empty()) throw Error(ErrorCode::kUsage, "evaluate needs --scores");
  std::map<std::string, std::map<std::string, ScoreFile>> nli_files;
  for (const auto& [metric, per_dataset] : files) {
    if (per_dataset.begin()->second.is_nli()) nli_files[metric] = per_dataset;
  }
  const auto plan = plan_pooling(opt.pooling, datasets, nli_files, true);

  json metrics = json::array();
  for (const auto& [metric, per_dataset] : files) {
    const bool is_nli = nli_files.contains(metric);
    json adv = json::array();
    json std_rows = json::array();
    std::vector<double> accs;
    std::vector<double> corrs;
    for (const auto& d : datasets) {
      const auto it = per_dataset.find(d.spec.name);
      if (it == per_dataset.end()) continue;
      std::optional<nli::PoolingStrategy> strategy;
      if (is_nli) {
        strategy = plan.per_dataset.contains(d.spec.name) ? plan.per_dataset.at(d.spec.name)
                                                          : *plan.global;
      }
      auto r = evaluate_dataset(d, to_batch(it->second, strategy));
      r.detail["strategy"] = strategy ? json(strategy->name()) : json(nullptr);
      if (d.suite) {
        accs.push_back(r.performance);
        adv.push_back(r.detail);
      } else {
        corrs.push_back(r.performance);
        std_rows.push_back(r.detail);
      }
    }
    const double overall = !accs.empty() && !corrs.empty()
                               ? stats::overall_performance(accs, corrs)
                               : mean_of(!accs.empty() ? accs : corrs);
    metrics.push_back({{"metric_id", metric},
                       {"nli", is_nli},
                       {"adversarial", adv},
                       {"standard", std_rows},
                       {"average_accuracy", nullable(mean_of(accs))},
                       {"average_correlation", nullable(mean_of(corrs))},
                       {"overall", nullable(overall)}});
    log << metric << ": accuracy " << mean_of(accs) << ", correlation " << mean_of(corrs)
        << "\n";
  }
  json report = {{"format", "menli-report"},
                 {"version", 1},
                 {"command", "evaluate"},
                 {"pooling", plan.report},
                 {"metrics", metrics}};
  write_report(report, opt.out_dir, log);
  return report;
}

json cmd_combine(const CombineOptions& opt, std::ostream& log) {
  const auto datasets = load_datasets(opt.datasets);
  std::map<std::string, ScoreFile> nli_files;
  std::map<std::string, ScoreFile> base_files;
  std::string nli_metric;
  std::string base_metric;
  for (const auto& d : datasets) {
    const auto n = opt.nli_scores.find(d.spec.name);
    const auto b = opt.base_scores.find(d.spec.name);
    if (n == opt.nli_scores.end() || b == opt.base_scores.end()) {
      throw Error(ErrorCode::kMissingField,
                  "dataset '" + d.spec.name + "' needs both --nli-scores and --base-scores");
    }
    nli_files[d.spec.name] = read_score_file(n->second);
    base_files[d.spec.name] = read_score_file(b->second);
    nli_metric = nli_files[d.spec.name].metric_id;
    base_metric = base_files[d.spec.name].metric_id;
  }
  const auto plan = plan_pooling(
      opt.pooling, datasets,
      nli_files.begin()->second.is_nli()
          ? std::map<std::string, std::map<std::string, ScoreFile>>{{nli_metric, nli_files}}
          : std::map<std::string, std::map<std::string, ScoreFile>>{},
      false);

  // Per-dataset normalization, then one merged batch keyed "<dataset>/<id>".
  std::map<std::string, double> n_all;
  std::map<std::string, double> m_all;
  json normalization = json::array();
  for (const auto& d : datasets) {
    const auto n = min_max_normalize(to_batch(nli_files.at(d.spec.name), plan.global));
    const auto m = min_max_normalize(to_batch(base_files.at(d.spec.name)));
    for (const auto& [id, v] : n.entries()) n_all[d.spec.name + "/" + id] = v;
    for (const auto& [id, v] : m.entries()) m_all[d.spec.name + "/" + id] = v;
    normalization.push_back({{"dataset", d.spec.name},
                             {"nli_min", n.normalization()->min},
                             {"nli_max", n.normalization()->max},
                             {"base_min", m.normalization()->min},
                             {"base_max", m.normalization()->max}});
  }
  const auto as_normalized = [](std::string id, const std::map<std::string, double>& v) {
    const ScoreBatch b(std::move(id), v);
    return b.with_values(b.values(), MinMax{0.0, 1.0});
  };
  const auto nli_batch = as_normalized(nli_metric, n_all);
  const auto base_batch = as_normalized(base_metric, m_all);

  const auto weights = opt.weights.empty() ? default_weight_grid() : opt.weights;
  std::vector<json> details;
  std::vector<std::size_t> dropped;
  const auto evaluator = [&](const CombinedBatch& c) {
    std::map<std::string, std::map<std::string, double>> split;
    const auto& ids = c.scores.ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto slash = ids[i].find('/');
      split[ids[i].substr(0, slash)][ids[i].substr(slash + 1)] =
          c.scores.values()(static_cast<Eigen::Index>(i));
    }
    std::vector<double> accs;
    std::vector<double> corrs;
    json rows = json::array();
    for (const auto& d : datasets) {
      const auto r = evaluate_dataset(d, ScoreBatch(c.scores.metric_id(), split[d.spec.name]));
      (d.suite ? accs : corrs).push_back(r.performance);
      rows.push_back({{"dataset", d.spec.name},
                      {"kind", std::string(category_name(d.spec.kind))},
                      {"value", r.performance}});
    }
    details.push_back(rows);
    dropped.push_back(c.dropped_ids.size());
    return SweepMetrics{mean_of(accs), mean_of(corrs)};
  };
  const auto curve = sweep(nli_batch, base_batch, weights, evaluator);

  json points = json::array();
  std::optional<std::size_t> best;
  std::vector<double> overall(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const auto& p = curve[i];
    const bool has_acc = std::isfinite(p.accuracy);
    const bool has_corr = std::isfinite(p.correlation);
    overall[i] = has_acc ? p.accuracy : p.correlation;
    if (has_acc && has_corr) {
      // Average over datasets, both kinds together.
      std::vector<double> accs;
      std::vector<double> corrs;
      for (const auto& row : details[i]) {
        (row["kind"] == "adversarial" ? accs : corrs).push_back(row["value"].get<double>());
      }
      overall[i] = stats::overall_performance(accs, corrs);
    }
    if (!best || overall[i] > overall[*best]) best = i;
    points.push_back({{"w_nli", p.w_nli},
                      {"accuracy", nullable(p.accuracy)},
                      {"correlation", nullable(p.correlation)},
                      {"overall", nullable(overall[i])},
                      {"dropped", dropped[i]},
                      {"datasets", details[i]}});
  }
  json report = {{"format", "menli-report"},
                 {"version", 1},
                 {"command", "combine"},
                 {"nli_metric", nli_metric},
                 {"base_metric", base_metric},
                 {"pooling", plan.report},
                 {"normalization", normalization},
                 {"sweep", points},
                 {"best",
                  {{"w_nli", curve[*best].w_nli},
                   {"overall", nullable(overall[*best])},
                   {"accuracy", nullable(curve[*best].accuracy)},
                   {"correlation", nullable(curve[*best].correlation)}}}};
  log << "best w_nli = " << curve[*best].w_nli << " (overall " << overall[*best] << ")\n";
  write_report(report, opt.out_dir, log);
  return report;
}

json cmd_report(const ReportOptions& opt, std::ostream& log) {
  std::ifstream in(opt.in);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + opt.in.string());
  json report;
  try {
    report = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, opt.in.string() + ": " + e.what());
  }
  if (report.value("format", "") != "menli-report") {
    throw Error(ErrorCode::kParseError, opt.in.string() + " is not a menli report");
  }
  const auto text = render_text(report);
  if (opt.text.empty()) {
    log << text;
  } else {
    write_if_changed(opt.text, text);
  }
  std::vector<fs::path> plots;
  if (!opt.svg_dir.empty()) plots = render_svg(report, opt.svg_dir);
  json out = {{"command", "report"}, {"plots", json::array()}};
  for (const auto& p : plots) out["plots"].push_back(p.string());
  return out;
}

}  // namespace menli::cli
