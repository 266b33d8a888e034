// analysis.hpp - Pareto tooling (dominance, non-dominated filtering, rank
// voting helpers), the training-cost model, run statistics, and a
// piecewise-linear boundary surface over the objective cloud.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "sagin/util.hpp"

namespace sagin {

// a dominates b: >= everywhere and > somewhere (maximization convention).
bool dominates(const std::array<double, 3>& a, const std::array<double, 3>& b);

// Indices of the non-dominated members; duplicates are all retained.
std::vector<int> nondominated_filter(const std::vector<std::array<double, 3>>& pts);

// 1-based ascending rank of values[index]; ties broken earlier-index-first.
int asc_rank(const std::vector<double>& values, int index);

// Ranks for every element at once (stable sort based; agrees with asc_rank).
std::vector<int> asc_ranks_all(const std::vector<double>& values);

// --- training cost model ----------------------------------------------------

struct AgentLayoutDims {
  std::vector<int> actor;
  std::vector<int> critic;
};

// Multiply-accumulate count per optimization iteration summed over agents and
// layers, scaled by episodes * timesteps.
double complexity_estimate(const std::vector<AgentLayoutDims>& agents,
                           long long episodes, long long timesteps);

// --- run statistics ----------------------------------------------------------

struct MetricsRow {
  int episode = 0, t = 0;
  double r1sum_bps = 0.0, d2ave_s = 0.0, sinr3ave = 0.0;
  double reward1 = 0.0, reward2 = 0.0, reward3 = 0.0, central_reward = 0.0;
  int repairs = 0;
};

struct AveragedMetrics {
  double r1sum_bps = 0.0, d2ave_s = 0.0, sinr3ave = 0.0;
};

AveragedMetrics time_averaged_metrics(const std::vector<MetricsRow>& rows);

// --- boundary surface ---------------------------------------------------------

// Piecewise-linear interpolation of the third objective over the plane of the
// first two: Delaunay-style triangulation of the (x, y) projections, evaluated
// on a regular grid. Grid nodes outside the convex hull are NaN.
struct BoundarySurface {
  bool ok = false;
  std::string note;        // reason when !ok ("degenerate point set", ...)
  int resolution = 0;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  std::vector<double> z;   // resolution x resolution, row-major (y outer)
  double at(int iy, int ix) const { return z[size_t(iy) * resolution + ix]; }
};

BoundarySurface boundary_surface(const std::vector<std::array<double, 3>>& pts,
                                 int resolution);

}  // namespace sagin
