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

#include "menli/scorer_io.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "jsonl.hpp"
#include "menli/error.hpp"
#include "menli/textops.hpp"

namespace menli::scorer {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kScalar: return "scalar";
    case Mode::kNliForward: return "nli_forward";
    case Mode::kNliBackward: return "nli_backward";
    case Mode::kNliBoth: return "nli_both";
  }
  return "scalar";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::kScalar, Mode::kNliForward, Mode::kNliBackward, Mode::kNliBoth}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

namespace {

bool same_triple(const std::optional<nli::NliTriple>& a,
                 const std::optional<nli::NliTriple>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || a->probs() == b->probs();
}

json triple_json(const nli::NliTriple& t) {
  return {{"e", t.e()}, {"c", t.c()}, {"n", t.n()}};
}

nli::NliTriple triple_from(const json& j, double tolerance) {
  return nli::NliTriple::make(j.at("e").get<double>(), j.at("c").get<double>(),
                              j.at("n").get<double>(), tolerance);
}

json request_json(const ScoreRequest& r) {
  return {{"request_id", r.request_id},
          {"text_a", r.text_a},
          {"text_b", r.text_b},
          {"mode", std::string(to_string(r.mode))}};
}

ScoreRequest request_from(const json& j) {
  ScoreRequest r;
  r.request_id = j.at("request_id").get<std::string>();
  r.text_a = j.at("text_a").get<std::string>();
  r.text_b = j.at("text_b").get<std::string>();
  const auto mode = parse_mode(j.value("mode", "scalar"));
  if (!mode) throw Error(ErrorCode::kParseError, "unknown mode " + j.value("mode", ""));
  r.mode = *mode;
  return r;
}

json response_json(const ScoreResponse& r) {
  json j = {{"request_id", r.request_id}};
  if (r.scalar) j["scalar"] = *r.scalar;
  if (r.forward || r.backward) {
    json t = json::object();
    if (r.forward) t["forward"] = triple_json(*r.forward);
    if (r.backward) t["backward"] = triple_json(*r.backward);
    j["triples"] = t;
  }
  return j;
}

ScoreResponse response_from(const json& j, double tolerance) {
  ScoreResponse r;
  r.request_id = j.at("request_id").get<std::string>();
  if (j.contains("scalar")) {
    r.scalar = j.at("scalar").get<double>();
    if (!std::isfinite(*r.scalar)) {
      throw Error(ErrorCode::kParseError, "non-finite scalar for " + r.request_id);
    }
  }
  if (j.contains("triples")) {
    const auto& t = j.at("triples");
    if (t.contains("forward")) r.forward = triple_from(t.at("forward"), tolerance);
    if (t.contains("backward")) r.backward = triple_from(t.at("backward"), tolerance);
  }
  if (!r.scalar && !r.forward && !r.backward) {
    throw Error(ErrorCode::kParseError, "response " + r.request_id + " carries no score");
  }
  return r;
}

// Adds the path and line number to codec failures.
template <typename F>
auto at_line(const fs::path& path, std::size_t number, F&& f) {
  const auto where = path.string() + ":" + std::to_string(number) + ": ";
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, where + e.what());
  } catch (const Error& e) {
    throw Error(e.code() == ErrorCode::kInvalidTriple ? ErrorCode::kParseError : e.code(),
                where + e.what());
  }
}

std::string join_ids(const std::vector<std::string>& ids, std::size_t limit = 20) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  if (ids.size() > limit) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tail(const std::string& s, std::size_t n = 2000) {
  return s.size() <= n ? s : s.substr(s.size() - n);
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

bool operator==(const ScoreResponse& a, const ScoreResponse& b) {
  return a.request_id == b.request_id && a.scalar == b.scalar &&
         same_triple(a.forward, b.forward) && same_triple(a.backward, b.backward);
}

std::string to_json_line(const ScoreRequest& r) { return request_json(r).dump(); }
std::string to_json_line(const ScoreResponse& r) { return response_json(r).dump(); }

ScoreRequest parse_request(std::string_view line) {
  try {
    return request_from(json::parse(line));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

ScoreResponse parse_response(std::string_view line, double tolerance) {
  try {
    return response_from(json::parse(line), tolerance);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

void check_shape(const ScoreRequest& request, const ScoreResponse& response) {
  bool ok = false;
  switch (request.mode) {
    case Mode::kScalar:
      ok = response.scalar && !response.forward && !response.backward;
      break;
    case Mode::kNliForward:
      ok = !response.scalar && response.forward && !response.backward;
      break;
    case Mode::kNliBackward:
      ok = !response.scalar && !response.forward && response.backward;
      break;
    case Mode::kNliBoth:
      ok = !response.scalar && response.forward && response.backward;
      break;
  }
  if (!ok) {
    throw Error(ErrorCode::kInvalidArgument,
                "response " + response.request_id + " does not match mode " +
                    std::string(to_string(request.mode)));
  }
}

std::size_t write_requests(std::span<const ScoreRequest> requests, const fs::path& path) {
  if (requests.empty()) throw Error(ErrorCode::kEmptyInput, "no requests to write");
  std::vector<const ScoreRequest*> sorted;
  for (const auto& r : requests) {
    if (r.request_id.empty() || r.text_a.empty() || r.text_b.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "request '" + r.request_id + "' has an empty id or text");
    }
    sorted.push_back(&r);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->request_id < b->request_id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->request_id == sorted[i - 1]->request_id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate request_id '" + sorted[i]->request_id + "'");
    }
  }
  std::vector<json> records;
  records.reserve(sorted.size());
  for (const auto* r : sorted) records.push_back(request_json(*r));
  const json h = jsonl::header(kScoresFormat);
  jsonl::write(path, records, &h);
  return records.size();
}

std::vector<ScoreRequest> read_requests(const fs::path& path) {
  std::vector<ScoreRequest> out;
  for (const auto& line : jsonl::read(path, kScoresFormat)) {
    out.push_back(at_line(path, line.number, [&] { return request_from(line.value); }));
  }
  return out;
}

void write_responses(const ResponseMap& responses, const fs::path& path) {
  std::vector<json> records;
  records.reserve(responses.size());
  for (const auto& [id, r] : responses) records.push_back(response_json(r));
  const json h = jsonl::header(kScoresFormat);
  jsonl::write(path, records, &h);
}

ResponseMap read_responses(const fs::path& path, std::span<const std::string> expected_ids,
                           double tolerance) {
  ResponseMap out;
  std::vector<std::string> duplicates;
  for (const auto& line : jsonl::read(path, kScoresFormat)) {
    auto r = at_line(path, line.number,
                     [&] { return response_from(line.value, tolerance); });
    const auto id = r.request_id;
    if (!out.emplace(id, std::move(r)).second) duplicates.push_back(id);
  }
  if (!duplicates.empty()) {
    throw Error(ErrorCode::kParseError,
                path.string() + ": duplicate response ids: " + join_ids(duplicates));
  }
  const std::set<std::string> expected(expected_ids.begin(), expected_ids.end());
  std::vector<std::string> missing;
  std::vector<std::string> extra;
  for (const auto& id : expected) {
    if (!out.contains(id)) missing.push_back(id);
  }
  for (const auto& [id, r] : out) {
    if (!expected.contains(id)) extra.push_back(id);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = path.string() + ":";
    if (!missing.empty()) msg += " missing ids: " + join_ids(missing) + ";";
    if (!extra.empty()) msg += " unexpected ids: " + join_ids(extra) + ";";
    throw Error(ErrorCode::kCoverageGap, msg);
  }
  return out;
}

ResponseMap read_responses(const fs::path& path, std::span<const ScoreRequest> requests,
                           double tolerance) {
  std::vector<std::string> ids;
  ids.reserve(requests.size());
  for (const auto& r : requests) ids.push_back(r.request_id);
  auto out = read_responses(path, ids, tolerance);
  for (const auto& r : requests) check_shape(r, out.at(r.request_id));
  return out;
}

ResponseMap merge_responses(const ResponseMap& a, const ResponseMap& b) {
  ResponseMap out = a;
  for (const auto& [id, r] : b) {
    const auto [it, inserted] = out.emplace(id, r);
    if (!inserted && !(it->second == r)) {
      throw Error(ErrorCode::kIdMismatch, "conflicting responses for '" + id + "'");
    }
  }
  return out;
}

namespace {

std::string expand_template(std::string tpl, const fs::path& in, const fs::path& out) {
  const auto replace_all = [&](std::string_view key, const std::string& value) {
    for (auto pos = tpl.find(key); pos != std::string::npos;
         pos = tpl.find(key, pos + value.size())) {
      tpl.replace(pos, key.size(), value);
    }
  };
  replace_all("{in}", shell_quote(in.string()));
  replace_all("{out}", shell_quote(out.string()));
  return tpl;
}

/// Runs `sh -c command` in its own process group with stdout and stderr
/// captured to `log`. Returns the wait status; throws kTimeout.
int run_shell(const std::string& command, const fs::path& log,
              std::chrono::milliseconds timeout) {
  const std::string log_path = log.string();
  const pid_t pid = fork();
  if (pid < 0) throw Error(ErrorCode::kIoError, "fork failed");
  if (pid == 0) {
    setpgid(0, 0);
    const int fd = open(log_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      dup2(fd, STDOUT_FILENO);
      dup2(fd, STDERR_FILENO);
      close(fd);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  int status = 0;
  auto pause = std::chrono::milliseconds(1);
  while (true) {
    const pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) return status;
    if (r < 0 && errno != EINTR) throw Error(ErrorCode::kIoError, "waitpid failed");
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      throw Error(ErrorCode::kTimeout,
                  "scorer exceeded " + std::to_string(timeout.count()) + " ms: " + command);
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::milliseconds(50));
  }
}

}  // namespace

RunResult run_external_scorer(const ExternalScorer& scorer, const fs::path& requests,
                              const fs::path& responses) {
  const auto& tpl = scorer.command_template;
  if (tpl.find("{in}") == std::string::npos || tpl.find("{out}") == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "scorer command must contain {in} and {out}: " + tpl);
  }
  const auto reqs = read_requests(requests);
  const std::string request_bytes = read_file(requests);
  const std::string key = hex(text::fnv1a(tpl, text::fnv1a(request_bytes)));
  const fs::path sidecar = fs::path(responses.string() + ".hash");

  if (scorer.use_cache && fs::exists(responses) && fs::exists(sidecar) &&
      read_file(sidecar) == key) {
    try {
      return {responses, read_responses(responses, reqs), true};
    } catch (const Error&) {
      // Stale or damaged output: fall through and rescore.
    }
  }
  if (responses.has_parent_path()) fs::create_directories(responses.parent_path());
  fs::remove(sidecar);
  fs::remove(responses);

  const fs::path log = fs::path(responses.string() + ".log");
  const int status = run_shell(expand_template(tpl, requests, responses), log,
                               scorer.timeout);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const std::string why = WIFEXITED(status)
                                ? "exit code " + std::to_string(WEXITSTATUS(status))
                                : "signal " + std::to_string(WTERMSIG(status));
    throw Error(ErrorCode::kScorerFailed,
                "scorer failed (" + why + "); stderr tail:\n" + tail(read_file(log)));
  }
  if (!fs::exists(responses)) {
    throw Error(ErrorCode::kScorerFailed,
                "scorer exited 0 but wrote no " + responses.string());
  }
  RunResult result{responses, read_responses(responses, reqs), false};
  std::ofstream(sidecar, std::ios::binary | std::ios::trunc) << key;
  return result;
}

ResponseMap run_sharded(const ExternalScorer& scorer, std::span<const ScoreRequest> requests,
                        std::size_t shards, const fs::path& workdir) {
  if (requests.empty()) throw Error(ErrorCode::kEmptyInput, "no requests to score");
  shards = std::clamp<std::size_t>(shards, 1, requests.size());
  std::vector<ScoreRequest> sorted(requests.begin(), requests.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.request_id < b.request_id; });
  std::vector<std::future<ResponseMap>> jobs;
  for (std::size_t k = 0; k < shards; ++k) {
    std::vector<ScoreRequest> part;
    for (std::size_t i = k; i < sorted.size(); i += shards) part.push_back(sorted[i]);
    const auto tag = "shard-" + std::to_string(k);
    const fs::path in = workdir / (tag + ".requests.jsonl");
    const fs::path out = workdir / (tag + ".responses.jsonl");
    write_requests(part, in);
    jobs.push_back(std::async(std::launch::async, [&scorer, in, out] {
      return run_external_scorer(scorer, in, out).values;
    }));
  }
  ResponseMap merged;
  std::exception_ptr failure;
  for (auto& job : jobs) {
    try {
      merged = merge_responses(merged, job.get());
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return merged;
}

struct LineScorer::Impl {
  pid_t pid = -1;
  int fd = -1;
  std::string buffer;
  std::chrono::milliseconds timeout;
};

LineScorer::LineScorer(const std::string& command, std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>()) {
  impl_->timeout = timeout;
  int sv[2];
  if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
    throw Error(ErrorCode::kIoError, "socketpair failed");
  }
  const pid_t pid = fork();
  if (pid < 0) {
    close(sv[0]);
    close(sv[1]);
    throw Error(ErrorCode::kIoError, "fork failed");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(sv[1], STDIN_FILENO);
    dup2(sv[1], STDOUT_FILENO);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(sv[1]);
  impl_->pid = pid;
  impl_->fd = sv[0];
}

LineScorer::~LineScorer() {
  if (impl_->fd >= 0) {
    shutdown(impl_->fd, SHUT_WR);
    close(impl_->fd);
  }
  if (impl_->pid > 0) {
    int status = 0;
    for (int i = 0; i < 200; ++i) {
      if (waitpid(impl_->pid, &status, WNOHANG) == impl_->pid) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    kill(-impl_->pid, SIGKILL);
    kill(impl_->pid, SIGKILL);
    waitpid(impl_->pid, &status, 0);
  }
}

ScoreResponse LineScorer::score(const ScoreRequest& request) {
  const std::string line = to_json_line(request) + "\n";
  for (std::size_t sent = 0; sent < line.size();) {
    const ssize_t n = send(impl_->fd, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kScorerFailed, "line scorer closed its input");
    }
    sent += static_cast<std::size_t>(n);
  }
  const auto deadline = std::chrono::steady_clock::now() + impl_->timeout;
  std::size_t newline;
  while ((newline = impl_->buffer.find('\n')) == std::string::npos) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      throw Error(ErrorCode::kTimeout, "line scorer did not answer " + request.request_id);
    }
    pollfd p{impl_->fd, POLLIN, 0};
    const int ready = poll(&p, 1, static_cast<int>(left.count()));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) continue;
    char buf[4096];
    const ssize_t n = recv(impl_->fd, buf, sizeof buf, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw Error(ErrorCode::kScorerFailed, "line scorer exited");
    impl_->buffer.append(buf, static_cast<std::size_t>(n));
  }
  const std::string reply = impl_->buffer.substr(0, newline);
  impl_->buffer.erase(0, newline + 1);
  auto response = parse_response(reply);
  if (response.request_id != request.request_id) {
    throw Error(ErrorCode::kIdMismatch, "line scorer answered " + response.request_id +
                                            " to " + request.request_id);
  }
  check_shape(request, response);
  return response;
}

ResponseMap LineScorer::score_all(std::span<const ScoreRequest> requests) {
  ResponseMap out;
  for (const auto& r : requests) out.emplace(r.request_id, score(r));
  return out;
}

bool is_builtin(std::string_view name) {
  return name == "sentbleu" || name == "rougeL" || name == "neg_edit_distance";
}

std::vector<std::string> builtin_names() { return {"sentbleu", "rougeL", "neg_edit_distance"}; }

double builtin_score(std::string_view name, std::string_view reference,
                     std::string_view candidate) {
  if (name == "sentbleu") return text::sentence_bleu(candidate, reference);
  if (name == "rougeL") return text::rouge_l_f1(candidate, reference);
  if (name == "neg_edit_distance") return -text::levenshtein_normalized(reference, candidate);
  throw Error(ErrorCode::kUnknownScorer, "unknown builtin scorer '" + std::string(name) + "'");
}

ResponseMap builtin_scorer(std::string_view name, std::span<const ScoreRequest> requests) {
  if (!is_builtin(name)) {
    throw Error(ErrorCode::kUnknownScorer,
                "unknown builtin scorer '" + std::string(name) + "'");
  }
  ResponseMap out;
  for (const auto& r : requests) {
    if (r.mode != Mode::kScalar) {
      throw Error(ErrorCode::kUnsupported,
                  "builtin scorers answer scalar requests only (" + r.request_id + ")");
    }
    ScoreResponse resp;
    resp.request_id = r.request_id;
    resp.scalar = builtin_score(name, r.text_a, r.text_b);
    out.emplace(r.request_id, std::move(resp));
  }
  return out;
}

}  // namespace menli::scorer
