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

// Scaling runs: Z-H wall time over a family of generated instances whose
// edge count grows with the stage width.

#ifndef MSPLAB_BENCH_HPP
#define MSPLAB_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "msplab/generator.hpp"
#include "msplab/zh_solver.hpp"

namespace msplab {

struct BenchConfig {
  int stages = 8;
  std::vector<int> widths{2, 3, 4, 5, 6};
  double edge_density = 1.0;
  double eset_density = 0.8;
  int seeds_per_width = 5;
  std::uint64_t seed = 1;
};

struct BenchPoint {
  int width = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;  // mean over the seeds
  double median_seconds = 0.0;
  std::size_t max_sweeps = 0;
};

struct BenchResult {
  std::vector<BenchPoint> points;
  double slope = 0.0;  // log time against log edges
};

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("x values must not all be equal");
  return (n * sxy - sx * sy) / den;
}

/// Runs the family. AbnormalTermination from any run propagates.
inline BenchResult run_bench(const BenchConfig& c) {
  BenchResult out;
  std::vector<double> xs, ys;
  for (int w : c.widths) {
    BenchPoint p;
    p.width = w;
    std::vector<double> times;
    std::size_t edge_sum = 0;
    for (int s = 0; s < c.seeds_per_width; ++s) {
      GenShape shape;
      shape.stages = c.stages;
      shape.widths.assign(static_cast<std::size_t>(c.stages) + 1, w);
      shape.widths.front() = shape.widths.back() = 1;
      shape.edge_density = c.edge_density;
      shape.eset_density = c.eset_density;
      shape.seed = KeyedRng(c.seed).bits({static_cast<std::uint64_t>(w), static_cast<std::uint64_t>(s)});
      const MultistageGraph g = gen_msp(shape);
      const ZhResult r = zh_solve(g);
      times.push_back(std::chrono::duration<double>(r.metrics.wall_time).count());
      edge_sum += g.edge_count();
      p.vertices = std::max(p.vertices, g.vertex_count());
      p.max_sweeps = std::max(p.max_sweeps, r.metrics.outer_sweeps);
    }
    std::sort(times.begin(), times.end());
    p.median_seconds = std::max(times[times.size() / 2], 1e-7);
    p.edges = edge_sum / static_cast<std::size_t>(std::max(c.seeds_per_width, 1));
    xs.push_back(static_cast<double>(p.edges));
    ys.push_back(p.median_seconds);
    out.points.push_back(p);
  }
  out.slope = loglog_slope(xs, ys);
  return out;
}

}  // namespace msplab

#endif  // MSPLAB_BENCH_HPP
