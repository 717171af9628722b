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

// msplab command-line tool.

#include <cstdlib>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msplab/bench.hpp"
#include "msplab/campaign.hpp"
#include "msplab/io.hpp"
#include "msplab/lab.hpp"
#include "msplab/oracle.hpp"
#include "msplab/reduction.hpp"
#include "msplab/zh_solver.hpp"

namespace {

using namespace msplab;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kFileError = 2,
  kInvalidInput = 3,
  kSolverError = 4,
  kPrecondition = 5,
};

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  command ran (a NO verdict is still 0)\n"
    "  1  usage error\n"
    "  2  file could not be read or written\n"
    "  3  input failed to parse or validate\n"
    "  4  solver terminated abnormally\n"
    "  5  precondition not met (minimize input is not a candidate counterexample)\n"
    "\n"
    "MSPLAB_ARCHIVE_DIR sets the default fuzz output directory.";

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  try {
    return read_file(path);
  } catch (const std::exception& e) {
    throw FileError(e.what());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  try {
    write_file(path, text);
  } catch (const std::exception& e) {
    throw FileError(e.what());
  }
}

// load_instance validates before returning.
MultistageGraph load(const std::string& path) { return load_instance(slurp(path)); }

std::string report_violations(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report.violations) out += "  " + v.code + " at " + v.location + ": " + v.message + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Labeled multistage graph simple-path lab"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--machine", machine, "Emit one JSON record instead of text");

  // solve
  auto* solve = app.add_subcommand("solve", "Run Z-H on an instance");
  std::string solve_in;
  bool trace = false;
  std::size_t max_sweeps = 0;
  solve->add_option("instance", solve_in, "Instance file, - for stdin")->required();
  solve->add_flag("--trace", trace, "Also print every state change as JSON lines");
  solve->add_option("--max-sweeps", max_sweeps, "Outer sweep limit (default: proven bound)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search on an instance or undirected graph");
  std::string oracle_in;
  bool hamilton = false;
  std::uint64_t nodes = Budget{}.max_nodes;
  long long ms = 0;
  oracle->add_option("input", oracle_in, "Instance file, - for stdin")->required();
  oracle->add_flag("--hamilton", hamilton, "Input is an undirected graph; search for a Hamilton circuit");
  oracle->add_option("--nodes", nodes, "Node expansion budget")->capture_default_str();
  oracle->add_option("--ms", ms, "Time budget in milliseconds, 0 for none");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Reduce an undirected graph to an instance");
  std::string reduce_in, reduce_out;
  int pivot = 1;
  reduce->add_option("graph", reduce_in, "Undirected graph file, - for stdin")->required();
  reduce->add_option("--pivot", pivot, "Vertex used as source and sink")->capture_default_str();
  reduce->add_option("-o,--output", reduce_out, "Output file (default stdout)");

  // gen-msp
  auto* gen_msp_cmd = app.add_subcommand("gen-msp", "Generate a random instance");
  GenShape shape;
  int gen_width = 3;
  std::vector<int> gen_widths;
  std::string gen_out;
  gen_msp_cmd->add_option("--stages", shape.stages, "Stage count L")->capture_default_str();
  gen_msp_cmd->add_option("--width", gen_width, "Width of every inner stage")->capture_default_str();
  gen_msp_cmd->add_option("--widths", gen_widths, "Inner stage widths (L-1 values), overrides --width");
  gen_msp_cmd->add_option("--edge-density", shape.edge_density)->capture_default_str();
  gen_msp_cmd->add_option("--eset-density", shape.eset_density)->capture_default_str();
  gen_msp_cmd->add_option("--seed", shape.seed)->capture_default_str();
  gen_msp_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // gen-graph
  auto* gen_graph = app.add_subcommand("gen-graph", "Generate a random undirected graph");
  int graph_n = 5;
  double graph_q = 0.5;
  std::uint64_t graph_seed = 0;
  std::string graph_out;
  gen_graph->add_option("-n", graph_n, "Vertex count")->capture_default_str();
  gen_graph->add_option("-q", graph_q, "Edge probability")->capture_default_str();
  gen_graph->add_option("--seed", graph_seed)->capture_default_str();
  gen_graph->add_option("-o,--output", graph_out, "Output file (default stdout)");

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "Differential campaign of Z-H against the oracle");
  std::string fuzz_config, fuzz_out;
  int fuzz_threads = -1;
  bool fuzz_resume = false;
  fuzz->add_option("--config", fuzz_config, "Campaign config file")->required();
  fuzz->add_option("--out", fuzz_out, "Output directory (overrides config and MSPLAB_ARCHIVE_DIR)");
  fuzz->add_option("--threads", fuzz_threads, "Worker threads (overrides config)");
  fuzz->add_flag("--resume", fuzz_resume, "Continue from the checkpoint in the output directory");

  // minimize
  auto* minimize_cmd = app.add_subcommand("minimize", "Shrink a candidate counterexample");
  std::string min_in, min_out;
  std::size_t min_evals = MinimizeBudget{}.max_evaluations;
  minimize_cmd->add_option("instance", min_in, "Instance file, - for stdin")->required();
  minimize_cmd->add_option("--evaluations", min_evals, "Predicate evaluation budget")->capture_default_str();
  minimize_cmd->add_option("-o,--output", min_out, "Output file (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Z-H wall time over instances of growing width");
  BenchConfig bench_cfg;
  bench->add_option("--stages", bench_cfg.stages)->capture_default_str();
  bench->add_option("--widths", bench_cfg.widths)->capture_default_str();
  bench->add_option("--eset-density", bench_cfg.eset_density)->capture_default_str();
  bench->add_option("--seeds", bench_cfg.seeds_per_width, "Instances per width")->capture_default_str();
  bench->add_option("--seed", bench_cfg.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) {
      const MultistageGraph g = load(solve_in);
      SolveOptions opts;
      opts.max_sweeps = max_sweeps;
      TraceLog log;
      const ZhResult r = trace ? zh_trace(g, log, opts) : zh_solve(g, opts);
      if (trace)
        for (const auto& ev : log) std::cout << to_json(ev).dump() << "\n";
      if (machine)
        std::cout << to_json(r).dump() << "\n";
      else
        std::cout << to_string(r.answer) << "\ncomp(E(D)) size " << r.final_comp_ed.size() << "\n";
    } else if (*oracle) {
      const Budget budget{nodes, std::chrono::milliseconds(ms)};
      if (hamilton) {
        const OracleResult r = oracle_hamilton(parse_ugraph(slurp(oracle_in)), budget);
        if (machine) {
          std::cout << to_json(r).dump() << "\n";
        } else {
          std::cout << to_string(r.answer) << "\n";
          if (r.witness) {
            for (auto v : *r.witness) std::cout << v << " ";
            std::cout << "\n";
          }
        }
      } else {
        const MultistageGraph g = load(oracle_in);
        const OracleResult r = oracle_simple_path(g, budget);
        if (machine) {
          std::cout << to_json(r, &g).dump() << "\n";
        } else {
          std::cout << to_string(r.answer) << "\n";
          if (r.witness) {
            for (auto v : *r.witness) std::cout << g.name_of(VertexId{v}) << " ";
            std::cout << "\n";
          }
        }
      }
    } else if (*reduce) {
      const auto [g, map] = reduce_hc_to_msp(parse_ugraph(slurp(reduce_in)), pivot);
      emit(reduce_out, serialize_instance(g));
      if (machine)
        std::cerr << nlohmann::json{{"vertices", map.stats.vertices},
                                    {"internal_vertices", map.stats.internal_vertices},
                                    {"edges", map.stats.edges}}
                         .dump()
                  << "\n";
    } else if (*gen_msp_cmd) {
      shape.widths.assign(static_cast<std::size_t>(std::max(shape.stages, 0)) + 1, gen_width);
      if (!gen_widths.empty()) {
        if (gen_widths.size() + 1 != static_cast<std::size_t>(shape.stages))
          throw std::invalid_argument("--widths needs stages - 1 values");
        std::copy(gen_widths.begin(), gen_widths.end(), shape.widths.begin() + 1);
      }
      if (!shape.widths.empty()) shape.widths.front() = shape.widths.back() = 1;
      emit(gen_out, serialize_instance(gen_msp(shape)));
    } else if (*gen_graph) {
      emit(graph_out, serialize_ugraph(gen_ugraph(graph_n, graph_q, graph_seed)));
    } else if (*fuzz) {
      CampaignConfig c = parse_config(slurp(fuzz_config));
      if (!fuzz_out.empty())
        c.out_dir = fuzz_out;
      else if (c.out_dir.empty())
        if (const char* env = std::getenv("MSPLAB_ARCHIVE_DIR")) c.out_dir = env;
      if (fuzz_threads >= 0) c.threads = static_cast<unsigned>(fuzz_threads);
      if (fuzz_resume) c.resume = true;
      const CampaignReport report = run_differential(c, [&](const CampaignReport& r) {
        if (!machine) std::cerr << "progress " << r.instances << "/" << c.count << "\n";
      });
      if (machine)
        std::cout << to_json(report, true).dump() << "\n";
      else
        std::cout << format_report(report);
    } else if (*minimize_cmd) {
      const MultistageGraph g = load(min_in);
      if (!is_candidate_counterexample(g)) throw PreconditionError("input is not a candidate counterexample");
      const MinimizeResult r = minimize(g, [](const MultistageGraph& h) { return is_candidate_counterexample(h); },
                                        MinimizeBudget{min_evals, std::chrono::milliseconds(0)});
      emit(min_out, serialize_instance(r.graph));
      const auto record = nlohmann::json{{"evaluations", r.evaluations},
                                         {"accepted_moves", r.accepted_moves},
                                         {"budget_exhausted", r.budget_exhausted},
                                         {"vec_before", vec_metric(g)},
                                         {"vec_after", vec_metric(r.graph)}};
      std::cerr << record.dump() << "\n";
    } else if (*bench) {
      const BenchResult r = run_bench(bench_cfg);
      if (machine) {
        auto points = nlohmann::json::array();
        for (const auto& p : r.points)
          points.push_back({{"width", p.width},
                            {"vertices", p.vertices},
                            {"edges", p.edges},
                            {"median_seconds", p.median_seconds},
                            {"max_sweeps", p.max_sweeps}});
        std::cout << nlohmann::json{{"points", points}, {"slope", r.slope}}.dump() << "\n";
      } else {
        std::cout << "width  vertices  edges  median_ms  max_sweeps\n";
        for (const auto& p : r.points)
          std::cout << p.width << "  " << p.vertices << "  " << p.edges << "  " << p.median_seconds * 1e3 << "  "
                    << p.max_sweeps << "\n";
        std::cout << "log-log slope " << r.slope << "\n";
      }
    }
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFileError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InvalidGraphError& e) {
    std::cerr << "error: instance failed validation\n" << report_violations(e.report());
    return kInvalidInput;
  } catch (const AbnormalTermination& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFileError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverError;
  }
  return kOk;
}
