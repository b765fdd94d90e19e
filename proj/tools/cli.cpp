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

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "menli/error.hpp"

namespace menli::cli {

using nlohmann::json;

namespace {

// Values from the optional JSON run file. Relative paths resolve against
// the file's directory.
class RunFile {
 public:
  RunFile() = default;
  explicit RunFile(const fs::path& path) : base_(path.parent_path()) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open run file " + path.string());
    try {
      j_ = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
    }
    if (!j_.is_object()) throw Error(ErrorCode::kParseError, path.string() + ": not an object");
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& at(const char* key) const { return j_.at(key); }

  // Fills `target` from the file unless the flag was given.
  template <typename T>
  void fill(const CLI::Option* flag, const char* key, T& target) const {
    if (flag->count() > 0 || !j_.contains(key)) return;
    try {
      target = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, std::string("run file key '") + key + "': " + e.what());
    }
  }

  void fill_path(const CLI::Option* flag, const char* key, std::string& target) const {
    std::string raw;
    if (flag->count() > 0 || !j_.contains(key)) return;
    fill(flag, key, raw);
    target = resolve(raw).string();
  }

  fs::path resolve(const std::string& p) const {
    const fs::path path(p);
    return path.is_absolute() || base_.empty() ? path : base_ / path;
  }

 private:
  json j_ = json::object();
  fs::path base_;
};

RunFile load_run_file(const std::string& path) {
  return path.empty() ? RunFile() : RunFile(fs::path(path));
}

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
    throw Error(ErrorCode::kUsage, "expected NAME=PATH, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

stats::CorrelationMethod correlation_method(const std::string& s) {
  const auto m = stats::parse_correlation_method(s);
  if (!m) throw Error(ErrorCode::kUsage, "unknown correlation '" + s + "'");
  return *m;
}

stats::Aggregation aggregation(const std::string& s) {
  const auto a = stats::parse_aggregation(s);
  if (!a) throw Error(ErrorCode::kUsage, "unknown aggregation '" + s + "' (mean or max)");
  return *a;
}

// Flags shared by evaluate and combine for declaring datasets.
struct DatasetFlags {
  std::vector<std::string> adversarial;
  std::vector<std::string> standard;
  std::string level = "segment";
  std::string correlation = "pearson";
  std::string aggregate = "mean";
  CLI::Option* level_opt = nullptr;
  CLI::Option* correlation_opt = nullptr;
  CLI::Option* aggregate_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--adversarial", adversarial,
                    "Adversarial dataset NAME=SUITE (repeatable)");
    app->add_option("--standard", standard,
                    "Human-judgment dataset NAME=JUDGMENTS (repeatable)");
    level_opt = app->add_option("--level", level,
                                "Correlation level for standard datasets: segment|system")
                    ->check(CLI::IsMember({"segment", "system"}));
    correlation_opt =
        app->add_option("--correlation", correlation,
                        "Correlation for standard datasets: pearson|spearman|kendall");
    aggregate_opt = app->add_option(
        "--aggregate", aggregate, "Multi-reference aggregation (ids KEY@k): mean|max");
  }

  // Flag-declared datasets replace the run file's list entirely.
  std::vector<DatasetSpec> resolve(const RunFile& file,
                                   std::map<std::string, json>* file_entries) const {
    std::vector<DatasetSpec> out;
    const auto method = correlation_method(correlation);
    const auto agg = aggregation(aggregate);
    if (!adversarial.empty() || !standard.empty()) {
      for (const auto& a : adversarial) {
        const auto [name, path] = split_assignment(a);
        out.push_back({name, stats::Category::kAdversarial, path, level, method, agg});
      }
      for (const auto& s : standard) {
        const auto [name, path] = split_assignment(s);
        out.push_back({name, stats::Category::kStandard, path, level, method, agg});
      }
      return out;
    }
    if (!file.has("datasets")) return out;
    for (const auto& d : file.at("datasets")) {
      DatasetSpec spec;
      try {
        spec.name = d.at("name").get<std::string>();
        const auto kind = d.at("kind").get<std::string>();
        if (kind != "adversarial" && kind != "standard") {
          throw Error(ErrorCode::kUsage, "dataset kind must be adversarial or standard");
        }
        spec.kind = kind == "adversarial" ? stats::Category::kAdversarial
                                          : stats::Category::kStandard;
        spec.path = file.resolve(d.at("path").get<std::string>());
        spec.level = level_opt->count() > 0 ? level : d.value("level", level);
        spec.method = correlation_opt->count() > 0
                          ? method
                          : correlation_method(d.value("correlation", correlation));
        spec.aggregate = aggregate_opt->count() > 0
                             ? agg
                             : aggregation(d.value("aggregate", aggregate));
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kParseError, std::string("run file dataset: ") + e.what());
      }
      if (spec.level != "segment" && spec.level != "system") {
        throw Error(ErrorCode::kUsage, "level must be segment or system");
      }
      if (file_entries != nullptr) (*file_entries)[spec.name] = d;
      out.push_back(std::move(spec));
    }
    return out;
  }
};

std::vector<fs::path> as_paths(const json& v, const RunFile& file) {
  std::vector<fs::path> out;
  if (v.is_string()) {
    out.push_back(file.resolve(v.get<std::string>()));
  } else {
    for (const auto& p : v) out.push_back(file.resolve(p.get<std::string>()));
  }
  return out;
}

void print_error(std::ostream& err, const std::string& command, const std::string& code,
                 const std::string& message) {
  err << json{{"error", {{"command", command}, {"code", code}, {"message", message}}}}.dump()
      << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"menli: adversarial preference suites and NLI-based metrics for NLG evaluation"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  // generate
  GenerateOptions gen;
  std::string gen_config, gen_seeds, gen_out, gen_lexicon, gen_name;
  std::string gen_phenomena, gen_setting = "ref-based", gen_para = "original";
  auto* g = app.add_subcommand("generate", "Build an adversarial test suite from seed records");
  g->add_option("--config", gen_config, "JSON run file; flags override its values");
  auto* g_seeds = g->add_option("--seeds", gen_seeds, "Seed records (JSON lines)");
  auto* g_out = g->add_option("--out", gen_out, "Suite file to write");
  auto* g_phen = g->add_option("--phenomena", gen_phenomena,
                               "Comma list of phenomena; join with '+' to compose, "
                               "e.g. number,negation,number+negation");
  auto* g_setting = g->add_option("--setting", gen_setting, "ref-based|ref-free");
  auto* g_para = g->add_option("--para-mode", gen_para,
                               "cand_para source: original|backtranslation|number-words");
  auto* g_seed = g->add_option("--seed", gen.seed, "Global random seed");
  auto* g_lex = g->add_option("--lexicon", gen_lexicon, "Lexicon directory (default: built-in)");
  auto* g_name = g->add_option("--name", gen_name, "Suite name (default: output file stem)");

  // score
  ScoreOptions sc;
  std::string sc_config, sc_suite, sc_pairs, sc_out, sc_workdir;
  auto* s = app.add_subcommand("score", "Score both candidates of every instance with one metric");
  s->add_option("--config", sc_config, "JSON run file; flags override its values");
  auto* s_suite = s->add_option("--suite", sc_suite, "Suite file to score");
  auto* s_pairs = s->add_option("--pairs", sc_pairs,
                                "Text pairs {instance_id, text_a, text_b} to score instead");
  auto* s_out = s->add_option("--out", sc_out, "Score file to write");
  auto* s_metric = s->add_option(
      "--metric", sc.metric, "Builtin (sentbleu, rougeL, neg_edit_distance) or a run-file scorer");
  auto* s_cmd = s->add_option("--command", sc.command,
                              "External scorer command with {in} and {out} placeholders");
  auto* s_mid = s->add_option("--metric-id", sc.metric_id, "Metric id recorded in the scores");
  auto* s_nli = s->add_flag("--nli", sc.nli, "Request NLI triples (both directions)");
  auto* s_rfs = s->add_flag("--ref-free-summarization", sc.ref_free_summarization,
                            "With --nli, request the source-to-candidate direction only");
  auto* s_line = s->add_flag("--line-mode", sc.line_mode,
                             "Talk to the scorer one JSON line at a time over stdin/stdout");
  auto* s_shards = s->add_option("--shards", sc.shards, "Concurrent scorer processes");
  auto* s_timeout = s->add_option("--timeout", sc.timeout_seconds, "Scorer timeout in seconds");
  auto* s_work = s->add_option("--workdir", sc_workdir,
                               "Request/response directory (default: <out>.work)");

  // evaluate
  EvaluateOptions ev;
  std::string ev_config, ev_out;
  std::vector<std::string> ev_scores;
  DatasetFlags ev_data;
  auto* e = app.add_subcommand("evaluate", "Accuracy, correlations and pooling selection");
  e->add_option("--config", ev_config, "JSON run file; flags override its values");
  ev_data.attach(e);
  e->add_option("--scores", ev_scores, "Score file for a dataset, NAME=PATH (repeatable)");
  auto* e_pool = e->add_option("--pooling", ev.pooling,
                               "auto | auto-loo | <direction>:<formula> such as bi:e");
  auto* e_out = e->add_option("--out-dir", ev_out, "Directory for report.json/.txt and plots");

  // combine
  CombineOptions co;
  std::string co_config, co_out;
  std::vector<std::string> co_nli, co_base;
  DatasetFlags co_data;
  auto* c = app.add_subcommand("combine", "Sweep w_nli over normalized NLI + base metric");
  c->add_option("--config", co_config, "JSON run file; flags override its values");
  co_data.attach(c);
  c->add_option("--nli-scores", co_nli, "NLI score file for a dataset, NAME=PATH");
  c->add_option("--base-scores", co_base, "Base metric score file for a dataset, NAME=PATH");
  auto* c_weights = c->add_option("--weights", co.weights,
                                  "Weight grid for w_nli (default 0, 0.1, ..., 1)")
                        ->delimiter(',');
  auto* c_pool = c->add_option("--pooling", co.pooling, "auto | <direction>:<formula>");
  auto* c_out = c->add_option("--out-dir", co_out, "Directory for report.json/.txt and plot");

  // report
  ReportOptions rp;
  std::string rp_in, rp_text, rp_svg;
  auto* r = app.add_subcommand("report", "Render a report JSON as aligned text and SVG");
  r->add_option("--in", rp_in, "report.json from evaluate or combine")->required();
  r->add_option("--text", rp_text, "Text output (default: stdout)");
  r->add_option("--svg-dir", rp_svg, "Directory for SVG plots");

  std::string command = "menli";
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    if (pe.get_exit_code() == 0) return app.exit(pe, out, err);
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();
    print_error(err, command, "Usage", pe.what());
    err << "run with --help for usage\n";
    return 2;
  }
  command = app.get_subcommands().front()->get_name();

  try {
    json summary;
    if (command == "generate") {
      const auto file = load_run_file(gen_config);
      file.fill_path(g_seeds, "seeds", gen_seeds);
      file.fill_path(g_out, "suite", gen_out);
      file.fill_path(g_lex, "lexicon", gen_lexicon);
      file.fill(g_setting, "setting", gen_setting);
      file.fill(g_para, "para_mode", gen_para);
      file.fill(g_seed, "seed", gen.seed);
      file.fill(g_name, "name", gen_name);
      if (g_phen->count() == 0 && file.has("phenomena")) {
        const auto& p = file.at("phenomena");
        if (p.is_string()) {
          gen_phenomena = p.get<std::string>();
        } else {
          for (const auto& item : p) {
            gen_phenomena += (gen_phenomena.empty() ? "" : ",") + item.get<std::string>();
          }
        }
      }
      gen.seeds = gen_seeds;
      gen.out = gen_out;
      gen.lexicon = gen_lexicon;
      gen.name = gen_name;
      gen.phenomena = parse_phenomena(gen_phenomena);
      const auto setting = parse_setting(gen_setting);
      if (!setting) throw Error(ErrorCode::kUsage, "setting must be ref-based or ref-free");
      gen.setting = *setting;
      const auto para = parse_para_mode(gen_para);
      if (!para) {
        throw Error(ErrorCode::kUsage,
                    "para-mode must be original, backtranslation or number-words");
      }
      gen.para_mode = *para;
      summary = cmd_generate(gen, out);
    } else if (command == "score") {
      const auto file = load_run_file(sc_config);
      file.fill_path(s_suite, "suite", sc_suite);
      file.fill_path(s_pairs, "pairs", sc_pairs);
      file.fill_path(s_out, "scores", sc_out);
      file.fill_path(s_work, "workdir", sc_workdir);
      file.fill(s_metric, "metric", sc.metric);
      file.fill(s_cmd, "command", sc.command);
      file.fill(s_mid, "metric_id", sc.metric_id);
      file.fill(s_nli, "nli", sc.nli);
      file.fill(s_rfs, "ref_free_summarization", sc.ref_free_summarization);
      file.fill(s_line, "line_mode", sc.line_mode);
      file.fill(s_shards, "shards", sc.shards);
      file.fill(s_timeout, "timeout", sc.timeout_seconds);
      if (file.has("scorers")) {
        sc.scorers = file.at("scorers").get<std::map<std::string, std::string>>();
      }
      sc.suite = sc_suite;
      sc.pairs = sc_pairs;
      sc.out = sc_out;
      sc.workdir = sc_workdir;
      summary = cmd_score(sc, out);
    } else if (command == "evaluate") {
      const auto file = load_run_file(ev_config);
      std::map<std::string, json> entries;
      ev.datasets = ev_data.resolve(file, &entries);
      for (const auto& [name, d] : entries) {
        if (d.contains("scores")) ev.scores[name] = as_paths(d["scores"], file);
      }
      std::map<std::string, std::vector<fs::path>> from_flags;
      for (const auto& a : ev_scores) {
        const auto [name, path] = split_assignment(a);
        from_flags[name].push_back(path);
      }
      for (auto& [name, paths] : from_flags) ev.scores[name] = paths;
      file.fill(e_pool, "pooling", ev.pooling);
      file.fill_path(e_out, "out_dir", ev_out);
      ev.out_dir = ev_out;
      summary = cmd_evaluate(ev, out);
    } else if (command == "combine") {
      const auto file = load_run_file(co_config);
      std::map<std::string, json> entries;
      co.datasets = co_data.resolve(file, &entries);
      for (const auto& [name, d] : entries) {
        if (d.contains("nli_scores")) co.nli_scores[name] = as_paths(d["nli_scores"], file)[0];
        if (d.contains("base_scores")) {
          co.base_scores[name] = as_paths(d["base_scores"], file)[0];
        }
      }
      for (const auto& a : co_nli) {
        const auto [name, path] = split_assignment(a);
        co.nli_scores[name] = path;
      }
      for (const auto& a : co_base) {
        const auto [name, path] = split_assignment(a);
        co.base_scores[name] = path;
      }
      file.fill(c_weights, "weights", co.weights);
      file.fill(c_pool, "pooling", co.pooling);
      file.fill_path(c_out, "out_dir", co_out);
      co.out_dir = co_out;
      summary = cmd_combine(co, out);
    } else if (command == "report") {
      rp.in = rp_in;
      rp.text = rp_text;
      rp.svg_dir = rp_svg;
      summary = cmd_report(rp, out);
    }
    return 0;
  } catch (const Error& ex) {
    print_error(err, command, std::string(to_string(ex.code())), ex.what());
    return ex.code() == ErrorCode::kUsage ? 2 : 1;
  } catch (const std::exception& ex) {
    print_error(err, command, "Internal", ex.what());
    return 1;
  }
}

}  // namespace menli::cli
