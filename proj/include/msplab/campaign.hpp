// Copyright 2026 The msplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Differential campaigns: Z-H against the exhaustive oracle over a seeded
// stream of instances.
//
// Instance i of a campaign uses seed `seed + i`; its shape and contents are a
// pure function of that seed and the configuration, so any subset of the
// stream can be regenerated and a campaign gives the same totals regardless
// of thread count. Work proceeds in batches; after each batch the archive,
// the rolling progress log and the checkpoint are updated from the calling
// thread, which makes an interrupted campaign resumable.
//
// Output directory layout:
//   report.txt, report.jsonl       final human table / structured records
//   progress.jsonl                 one record per completed batch
//   checkpoint.json                resume state
//   findings/<KIND>-<seed>/        instance.msp, zh.json, oracle.json,
//                                  meta.json and, for candidate
//                                  counterexamples, minimized.msp

#ifndef MSPLAB_CAMPAIGN_HPP
#define MSPLAB_CAMPAIGN_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "msplab/generator.hpp"
#include "msplab/io.hpp"
#include "msplab/lab.hpp"
#include "msplab/oracle.hpp"
#include "msplab/reduction.hpp"
#include "msplab/zh_solver.hpp"

namespace msplab {

struct CampaignConfig {
  /// "msp" for generated labeled multistage graphs, "hc" for reductions of
  /// random undirected graphs.
  std::string source = "msp";
  std::uint64_t count = 1000;
  std::uint64_t seed = 1;
  int stages_min = 4;
  int stages_max = 8;
  int width_max = 4;
  double edge_density = 0.5;
  std::vector<double> eset_densities{0.5};
  int hc_n_min = 4;
  int hc_n_max = 7;
  double hc_q = 0.5;
  Budget oracle;
  unsigned threads = 1;
  std::string out_dir;
  bool minimize = true;
  std::size_t minimize_evaluations = 5'000;
  bool resume = false;
  std::uint64_t batch = 1000;
};

inline nlohmann::json to_json(const CampaignConfig& c) {
  return {{"source", c.source},
          {"count", c.count},
          {"seed", c.seed},
          {"stages_min", c.stages_min},
          {"stages_max", c.stages_max},
          {"width_max", c.width_max},
          {"edge_density", c.edge_density},
          {"eset_density", c.eset_densities},
          {"hc_n_min", c.hc_n_min},
          {"hc_n_max", c.hc_n_max},
          {"hc_q", c.hc_q},
          {"oracle_nodes", c.oracle.max_nodes},
          {"oracle_ms", c.oracle.max_time.count()},
          {"minimize", c.minimize},
          {"minimize_evaluations", c.minimize_evaluations}};
}

/// Parses "key = value" lines ('#' comments). Unknown keys throw.
inline CampaignConfig parse_config(std::string_view text) {
  CampaignConfig c;
  detail::for_each_line(text, [&](int line, std::string_view raw) {
    std::string s(raw.substr(0, raw.find('#')));
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t\r");
      const auto e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    s = trim(s);
    if (s.empty()) return;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("E_SYNTAX", line, 1, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    auto as_int = [&] {
      try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw ParseError("E_SYNTAX", line, static_cast<int>(eq) + 2, "expected integer for " + key);
      }
    };
    auto as_double = [&](const std::string& v) {
      try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
      } catch (const std::exception&) {
        throw ParseError("E_SYNTAX", line, static_cast<int>(eq) + 2, "expected number for " + key);
      }
    };
    auto as_bool = [&] {
      if (value == "true" || value == "1" || value == "yes") return true;
      if (value == "false" || value == "0" || value == "no") return false;
      throw ParseError("E_SYNTAX", line, static_cast<int>(eq) + 2, "expected boolean for " + key);
    };
    if (key == "source") {
      if (value != "msp" && value != "hc") throw ParseError("E_SYNTAX", line, 1, "source must be msp or hc");
      c.source = value;
    } else if (key == "count") {
      c.count = static_cast<std::uint64_t>(as_int());
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(as_int());
    } else if (key == "stages_min") {
      c.stages_min = static_cast<int>(as_int());
    } else if (key == "stages_max") {
      c.stages_max = static_cast<int>(as_int());
    } else if (key == "width_max") {
      c.width_max = static_cast<int>(as_int());
    } else if (key == "edge_density") {
      c.edge_density = as_double(value);
    } else if (key == "eset_density") {
      c.eset_densities.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) c.eset_densities.push_back(as_double(trim(item)));
    } else if (key == "hc_n_min") {
      c.hc_n_min = static_cast<int>(as_int());
    } else if (key == "hc_n_max") {
      c.hc_n_max = static_cast<int>(as_int());
    } else if (key == "hc_q") {
      c.hc_q = as_double(value);
    } else if (key == "oracle_nodes") {
      c.oracle.max_nodes = static_cast<std::uint64_t>(as_int());
    } else if (key == "oracle_ms") {
      c.oracle.max_time = std::chrono::milliseconds(as_int());
    } else if (key == "threads") {
      c.threads = static_cast<unsigned>(as_int());
    } else if (key == "out_dir") {
      c.out_dir = value;
    } else if (key == "minimize") {
      c.minimize = as_bool();
    } else if (key == "minimize_evaluations") {
      c.minimize_evaluations = static_cast<std::size_t>(as_int());
    } else if (key == "resume") {
      c.resume = as_bool();
    } else if (key == "batch") {
      c.batch = static_cast<std::uint64_t>(as_int());
    } else {
      throw ParseError("E_SYNTAX", line, 1, "unknown key '" + key + "'");
    }
  });
  return c;
}

inline void check_config(const CampaignConfig& c) {
  if (c.stages_min < 2 || c.stages_max < c.stages_min)
    throw std::invalid_argument("stage range must satisfy 2 <= stages_min <= stages_max");
  if (c.width_max < 1) throw std::invalid_argument("width_max must be positive");
  if (c.eset_densities.empty()) throw std::invalid_argument("eset_density needs at least one value");
  if (c.source == "hc" && (c.hc_n_min < 3 || c.hc_n_max < c.hc_n_min || c.hc_n_max > 64))
    throw std::invalid_argument("hc order range must satisfy 3 <= hc_n_min <= hc_n_max <= 64");
  if (c.batch == 0) throw std::invalid_argument("batch must be positive");
}

/// Shape of generated instance `seed` under config c.
inline GenShape shape_for(const CampaignConfig& c, std::uint64_t seed) {
  const KeyedRng rng(seed);
  GenShape s;
  s.stages = rng.between(c.stages_min, c.stages_max, {kKeyShape, 0});
  s.widths.assign(static_cast<std::size_t>(s.stages) + 1, 1);
  for (int l = 1; l < s.stages; ++l)
    s.widths[static_cast<std::size_t>(l)] = rng.between(1, c.width_max, {kKeyShape, 1, static_cast<std::uint64_t>(l)});
  s.edge_density = c.edge_density;
  s.eset_density = c.eset_densities[static_cast<std::size_t>(
      rng.between(0, static_cast<int>(c.eset_densities.size()) - 1, {kKeyShape, 2}))];
  s.seed = KeyedRng::mix(seed ^ 0x5851f42d4c957f2dULL);
  return s;
}

/// Instance `seed` of the campaign's stream.
inline MultistageGraph campaign_instance(const CampaignConfig& c, std::uint64_t seed) {
  if (c.source == "hc") {
    const KeyedRng rng(seed);
    const int n = rng.between(c.hc_n_min, c.hc_n_max, {kKeyShape, 3});
    return reduce_hc_to_msp(gen_ugraph(n, c.hc_q, KeyedRng::mix(seed))).first;
  }
  return gen_msp(shape_for(c, seed));
}

struct InstanceOutcome {
  std::uint64_t seed = 0;
  Verdict verdict;
  ZhResult zh;
  OracleResult oracle;
  std::chrono::nanoseconds zh_time{0};
  std::chrono::nanoseconds oracle_time{0};
};

inline InstanceOutcome run_instance(const CampaignConfig& c, std::uint64_t seed) {
  InstanceOutcome out;
  out.seed = seed;
  const MultistageGraph g = campaign_instance(c, seed);
  out.zh = zh_solve(g);
  out.oracle = oracle_simple_path(g, c.oracle);
  out.verdict = classify(out.zh, out.oracle);
  out.zh_time = out.zh.metrics.wall_time;
  out.oracle_time = out.oracle.elapsed;
  return out;
}

struct CampaignReport {
  std::map<VerdictKind, std::uint64_t> totals;
  std::uint64_t instances = 0;
  std::uint64_t seed_first = 0;
  std::uint64_t seed_last = 0;
  nlohmann::json config;
  std::vector<std::string> archived;
  std::vector<std::string> io_errors;
  std::uint64_t resumed_at = 0;
  std::chrono::nanoseconds elapsed{0};
  std::chrono::nanoseconds zh_time{0};
  std::chrono::nanoseconds oracle_time{0};

  std::uint64_t total(VerdictKind k) const {
    auto it = totals.find(k);
    return it == totals.end() ? 0 : it->second;
  }
  std::uint64_t sum() const {
    std::uint64_t s = 0;
    for (auto [k, n] : totals) s += n;
    return s;
  }
};

/// Structured form. Timing fields are omitted unless with_timing is set, so
/// two runs of the same campaign compare equal.
inline nlohmann::json to_json(const CampaignReport& r, bool with_timing = false) {
  nlohmann::json totals = nlohmann::json::object();
  for (auto k : kAllVerdicts) totals[to_string(k)] = r.total(k);
  nlohmann::json j = {{"instances", r.instances},
                      {"seed_first", r.seed_first},
                      {"seed_last", r.seed_last},
                      {"totals", totals},
                      {"config", r.config},
                      {"archived", r.archived},
                      {"io_errors", r.io_errors}};
  if (with_timing) {
    using std::chrono::duration_cast;
    using std::chrono::milliseconds;
    j["elapsed_ms"] = duration_cast<milliseconds>(r.elapsed).count();
    j["zh_ms"] = duration_cast<milliseconds>(r.zh_time).count();
    j["oracle_ms"] = duration_cast<milliseconds>(r.oracle_time).count();
    j["resumed_at"] = r.resumed_at;
  }
  return j;
}

inline std::string format_report(const CampaignReport& r) {
  std::ostringstream out;
  out << "instances  " << r.instances << "  (seeds " << r.seed_first << ".." << r.seed_last << ")\n";
  for (auto k : kAllVerdicts) out << std::left << std::setw(26) << to_string(k) << r.total(k) << "\n";
  out << "archived   " << r.archived.size() << "\n";
  if (!r.io_errors.empty()) out << "io errors  " << r.io_errors.size() << "\n";
  out << "elapsed    " << std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count() << " ms\n";
  return out.str();
}

namespace detail {

// Writes with one retry; returns an error description on failure.
inline std::optional<std::string> write_with_retry(const std::filesystem::path& path,
                                                   const std::string& contents) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      write_file(path.string(), contents);
      return std::nullopt;
    } catch (const std::exception& e) {
      if (attempt == 1) return std::string(e.what());
    }
  }
  return std::nullopt;
}

inline void archive_finding(const CampaignConfig& c, const InstanceOutcome& o, CampaignReport& report) {
  const std::string id = std::string(to_string(o.verdict.kind)) + "-" + std::to_string(o.seed);
  report.archived.push_back(id);
  if (c.out_dir.empty()) return;
  const std::filesystem::path dir = std::filesystem::path(c.out_dir) / "findings" / id;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const MultistageGraph g = campaign_instance(c, o.seed);
  nlohmann::json meta = {{"id", id},
                         {"seed", o.seed},
                         {"verdict", to_string(o.verdict.kind)},
                         {"zh", to_string(o.verdict.zh)},
                         {"oracle", to_string(o.verdict.oracle)},
                         {"vec", vec_metric(g)},
                         {"config", to_json(c)}};
  if (o.verdict.kind == VerdictKind::kCandidateCounterexample && c.minimize) {
    const MinimizeBudget budget{c.minimize_evaluations, std::chrono::milliseconds(0)};
    const auto oracle_budget = c.oracle;
    auto result = minimize(
        g, [&](const MultistageGraph& h) { return is_candidate_counterexample(h, oracle_budget); }, budget);
    meta["minimized_vec"] = vec_metric(result.graph);
    meta["minimize_evaluations"] = result.evaluations;
    meta["minimize_budget_exhausted"] = result.budget_exhausted;
    if (auto err = write_with_retry(dir / "minimized.msp", serialize_instance(result.graph)))
      report.io_errors.push_back(id + ": " + *err);
  }
  const std::pair<const char*, std::string> files[] = {
      {"instance.msp", serialize_instance(g)},
      {"zh.json", to_json(o.zh).dump() + "\n"},
      {"oracle.json", to_json(o.oracle, &g).dump() + "\n"},
      {"meta.json", meta.dump(2) + "\n"},
  };
  for (const auto& [name, text] : files)
    if (auto err = write_with_retry(dir / name, text)) report.io_errors.push_back(id + ": " + *err);
}

inline nlohmann::json checkpoint_json(const CampaignReport& r, std::uint64_t next_index) {
  nlohmann::json j = to_json(r);
  j["next_index"] = next_index;
  return j;
}

}  // namespace detail

/// Loads a finding's instance and re-derives its verdict.
inline Verdict rerun_finding(const std::filesystem::path& finding_dir, const Budget& budget = {}) {
  const MultistageGraph g = load_instance(read_file((finding_dir / "instance.msp").string()));
  return classify(zh_solve(g), oracle_simple_path(g, budget));
}

using ProgressCallback = std::function<void(const CampaignReport&)>;

inline CampaignReport run_differential(const CampaignConfig& c, const ProgressCallback& progress = {}) {
  check_config(c);
  const auto started = std::chrono::steady_clock::now();
  CampaignReport report;
  report.config = to_json(c);
  report.seed_first = c.seed;
  report.seed_last = c.count ? c.seed + c.count - 1 : c.seed;
  for (auto k : kAllVerdicts) report.totals[k] = 0;

  const std::filesystem::path dir = c.out_dir;
  std::uint64_t next = 0;
  if (!c.out_dir.empty()) {
    std::filesystem::create_directories(dir);
    if (c.resume && std::filesystem::exists(dir / "checkpoint.json")) {
      const auto saved = nlohmann::json::parse(read_file((dir / "checkpoint.json").string()));
      if (saved.at("config") != report.config)
        throw std::runtime_error("checkpoint in " + c.out_dir + " belongs to a different configuration");
      next = saved.at("next_index").get<std::uint64_t>();
      report.instances = saved.at("instances").get<std::uint64_t>();
      for (auto k : kAllVerdicts) report.totals[k] = saved.at("totals").at(to_string(k)).get<std::uint64_t>();
      report.archived = saved.at("archived").get<std::vector<std::string>>();
      report.io_errors = saved.at("io_errors").get<std::vector<std::string>>();
      report.resumed_at = next;
    } else if (!c.resume) {
      std::filesystem::remove(dir / "progress.jsonl");
    }
  }

  const unsigned threads = std::max(1u, c.threads);
  std::vector<InstanceOutcome> outcomes;
  while (next < c.count) {
    const std::uint64_t batch_end = std::min(c.count, next + c.batch);
    const std::uint64_t n = batch_end - next;
    outcomes.assign(n, InstanceOutcome{});
    std::atomic<std::uint64_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      while (true) {
        const std::uint64_t i = cursor.fetch_add(1);
        if (i >= n) return;
        try {
          outcomes[i] = run_instance(c, c.seed + next + i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < std::min<std::uint64_t>(threads, n); ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& o : outcomes) {
      ++report.instances;
      ++report.totals[o.verdict.kind];
      report.zh_time += o.zh_time;
      report.oracle_time += o.oracle_time;
      if (o.verdict.kind != VerdictKind::kAgreeYes && o.verdict.kind != VerdictKind::kAgreeNo)
        detail::archive_finding(c, o, report);
    }
    next = batch_end;
    report.elapsed = std::chrono::steady_clock::now() - started;
    if (!c.out_dir.empty()) {
      std::ofstream(dir / "progress.jsonl", std::ios::app) << to_json(report, true).dump() << "\n";
      if (auto err = detail::write_with_retry(dir / "checkpoint.json", detail::checkpoint_json(report, next).dump()))
        report.io_errors.push_back("checkpoint: " + *err);
    }
    if (progress) progress(report);
  }

  report.elapsed = std::chrono::steady_clock::now() - started;
  if (!c.out_dir.empty()) {
    std::string lines;
    for (auto k : kAllVerdicts)
      lines += nlohmann::json{{"record", "total"}, {"verdict", to_string(k)}, {"count", report.total(k)}}.dump() + "\n";
    lines += nlohmann::json{{"record", "summary"}, {"report", to_json(report, true)}}.dump() + "\n";
    for (const auto& [name, text] : {std::pair{"report.txt", format_report(report)}, std::pair{"report.jsonl", lines}})
      if (auto err = detail::write_with_retry(dir / name, text)) report.io_errors.push_back(std::string(name) + ": " + *err);
  }
  return report;
}

}  // namespace msplab

#endif  // MSPLAB_CAMPAIGN_HPP
