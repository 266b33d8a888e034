// analysis.cpp - dominance and ranking, cost model, Bowyer-Watson surface.
#include "sagin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace sagin {

bool dominates(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  bool strict = false;
  for (int i = 0; i < 3; ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

std::vector<int> nondominated_filter(const std::vector<std::array<double, 3>>& pts) {
  // Incremental archive: points arrive sorted lexicographically descending so
  // no later point can dominate an archived one; each candidate only needs a
  // scan of the current archive. Duplicates survive (they never dominate).
  const int n = (int)pts.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a][0] != pts[b][0]) return pts[a][0] > pts[b][0];
    if (pts[a][1] != pts[b][1]) return pts[a][1] > pts[b][1];
    return pts[a][2] > pts[b][2];
  });
  std::vector<int> archive;
  for (int id : order) {
    bool dominated = false;
    for (int kept : archive)
      if (dominates(pts[kept], pts[id])) {
        dominated = true;
        break;
      }
    if (!dominated) archive.push_back(id);
  }
  std::sort(archive.begin(), archive.end());
  return archive;
}

int asc_rank(const std::vector<double>& values, int index) {
  if (index < 0 || index >= (int)values.size())
    throw std::out_of_range("asc_rank: index outside values");
  int rank = 1;
  for (int j = 0; j < (int)values.size(); ++j) {
    if (values[j] < values[index]) ++rank;
    else if (values[j] == values[index] && j < index) ++rank;
  }
  return rank;
}

std::vector<int> asc_ranks_all(const std::vector<double>& values) {
  const int n = (int)values.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  std::vector<int> rank(n);
  for (int pos = 0; pos < n; ++pos) rank[order[pos]] = pos + 1;
  return rank;
}

double complexity_estimate(const std::vector<AgentLayoutDims>& agents,
                           long long episodes, long long timesteps) {
  double per_iter = 0.0;
  for (const auto& a : agents) {
    for (size_t l = 0; l + 1 < a.actor.size(); ++l)
      per_iter += double(a.actor[l]) * a.actor[l + 1];
    for (size_t l = 0; l + 1 < a.critic.size(); ++l)
      per_iter += double(a.critic[l]) * a.critic[l + 1];
  }
  return per_iter * (double)episodes * (double)timesteps;
}

AveragedMetrics time_averaged_metrics(const std::vector<MetricsRow>& rows) {
  AveragedMetrics avg;
  if (rows.empty()) return avg;
  for (const auto& r : rows) {
    avg.r1sum_bps += r.r1sum_bps;
    avg.d2ave_s += r.d2ave_s;
    avg.sinr3ave += r.sinr3ave;
  }
  const double inv = 1.0 / (double)rows.size();
  avg.r1sum_bps *= inv;
  avg.d2ave_s *= inv;
  avg.sinr3ave *= inv;
  return avg;
}

// --- Delaunay surface --------------------------------------------------------

namespace {

struct Tri {
  int a, b, c;
};

double cross(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

// Circumcircle determinant of CCW triangle (a,b,c) against p, evaluated in
// extended precision; > 0 means p lies strictly inside.
long double circumcircle_det(const Vec2& p, const Vec2& a, const Vec2& b,
                             const Vec2& c) {
  const long double ax = (long double)a.x - p.x, ay = (long double)a.y - p.y;
  const long double bx = (long double)b.x - p.x, by = (long double)b.y - p.y;
  const long double cx = (long double)c.x - p.x, cy = (long double)c.y - p.y;
  return (ax * ax + ay * ay) * (bx * cy - cx * by) -
         (bx * bx + by * by) * (ax * cy - cx * ay) +
         (cx * cx + cy * cy) * (ax * by - bx * ay);
}

// CCW convex hull (monotone chain); strictly convex corners only.
std::vector<int> convex_hull(const std::vector<Vec2>& p) {
  std::vector<int> idx(p.size());
  for (size_t i = 0; i < p.size(); ++i) idx[i] = (int)i;
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return p[i].x != p[j].x ? p[i].x < p[j].x : p[i].y < p[j].y;
  });
  auto build = [&](std::vector<int>& chain, int i) {
    while (chain.size() >= 2 &&
           cross(p[chain[chain.size() - 2]].x, p[chain[chain.size() - 2]].y,
                 p[chain.back()].x, p[chain.back()].y, p[i].x, p[i].y) <= 0.0)
      chain.pop_back();
    chain.push_back(i);
  };
  std::vector<int> lower, upper;
  for (int i : idx) build(lower, i);
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) build(upper, *it);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

// Hull-fan triangulation plus incremental interior insertion, then Lawson
// edge flips toward the Delaunay criterion. Robust for the small point
// clouds handled here: every triangle stays inside the hull and the hull is
// covered, which is what the surface grid relies on.
std::vector<Tri> triangulate(const std::vector<Vec2>& v) {
  const std::vector<int> hull = convex_hull(v);
  if (hull.size() < 3) return {};

  double scale = 1e-30;
  for (const auto& p : v)
    scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
  const double eps_area = 1e-12 * scale * scale;

  std::vector<Tri> tris;
  for (size_t i = 1; i + 1 < hull.size(); ++i)
    tris.push_back({hull[0], hull[i], hull[i + 1]});

  std::vector<bool> placed(v.size(), false);
  for (int h : hull) placed[h] = true;

  for (int i = 0; i < (int)v.size(); ++i) {
    if (placed[i]) continue;
    placed[i] = true;
    // Locate the triangle whose barycentric coordinates are least negative:
    // exact containment when inside, the nearest triangle when the point
    // sits on an edge within rounding.
    int best = -1;
    double best_min = -std::numeric_limits<double>::infinity();
    for (size_t t = 0; t < tris.size(); ++t) {
      const Vec2 &A = v[tris[t].a], &B = v[tris[t].b], &C = v[tris[t].c];
      const double area = cross(A.x, A.y, B.x, B.y, C.x, C.y);
      if (area <= eps_area) continue;
      const double wa = cross(B.x, B.y, C.x, C.y, v[i].x, v[i].y) / area;
      const double wb = cross(C.x, C.y, A.x, A.y, v[i].x, v[i].y) / area;
      const double wc = cross(A.x, A.y, B.x, B.y, v[i].x, v[i].y) / area;
      const double m = std::min({wa, wb, wc});
      if (m > best_min) {
        best_min = m;
        best = (int)t;
      }
    }
    if (best < 0) continue;  // duplicate-heavy degenerate cloud
    const Tri t = tris[best];
    tris.erase(tris.begin() + best);
    const Tri split[3] = {{t.a, t.b, i}, {t.b, t.c, i}, {t.c, t.a, i}};
    int added = 0;
    for (const Tri& s : split) {
      if (cross(v[s.a].x, v[s.a].y, v[s.b].x, v[s.b].y, v[s.c].x, v[s.c].y) >
          eps_area) {
        tris.push_back(s);
        ++added;
      }
    }
    if (added == 0) tris.push_back(t);  // i duplicated a vertex; restore
  }

  // Lawson flips: replace locally non-Delaunay diagonals while the swap
  // keeps both triangles properly oriented. Bounded passes terminate even
  // with near-cocircular data.
  const long double flip_tol = 1e-9L * (long double)scale * scale * scale * scale;
  const int max_flips = 40 * (int)tris.size() + 400;
  for (int pass = 0; pass < max_flips; ++pass) {
    bool flipped = false;
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (size_t t = 0; t < tris.size(); ++t) {
      const int e[3][2] = {{tris[t].a, tris[t].b},
                           {tris[t].b, tris[t].c},
                           {tris[t].c, tris[t].a}};
      for (const auto& ed : e)
        by_edge[{std::min(ed[0], ed[1]), std::max(ed[0], ed[1])}].push_back(
            (int)t);
    }
    for (const auto& [edge, owners] : by_edge) {
      if (owners.size() != 2) continue;
      Tri& t1 = tris[owners[0]];
      Tri& t2 = tris[owners[1]];
      auto opposite = [&](const Tri& t) {
        if (t.a != edge.first && t.a != edge.second) return t.a;
        if (t.b != edge.first && t.b != edge.second) return t.b;
        return t.c;
      };
      const int c1 = opposite(t1), c2 = opposite(t2);
      if (c1 == c2) continue;
      if (circumcircle_det(v[c2], v[t1.a], v[t1.b], v[t1.c]) <= flip_tol)
        continue;
      const Tri n1 = {c1, edge.first, c2};
      const Tri n2 = {c2, edge.second, c1};
      const double a1 =
          cross(v[n1.a].x, v[n1.a].y, v[n1.b].x, v[n1.b].y, v[n1.c].x, v[n1.c].y);
      const double a2 =
          cross(v[n2.a].x, v[n2.a].y, v[n2.b].x, v[n2.b].y, v[n2.c].x, v[n2.c].y);
      if (a1 <= eps_area || a2 <= eps_area) continue;  // non-convex quad
      t1 = n1;
      t2 = n2;
      flipped = true;
      break;  // edge map is stale after a flip; rebuild
    }
    if (!flipped) break;
  }
  return tris;
}

}  // namespace

BoundarySurface boundary_surface(const std::vector<std::array<double, 3>>& pts,
                                 int resolution) {
  BoundarySurface surf;
  surf.resolution = resolution;
  if (resolution < 2) {
    surf.note = "resolution must be >= 2";
    return surf;
  }
  if (pts.size() < 3) {
    surf.note = "degenerate point set: need at least 3 points";
    return surf;
  }
  std::vector<Vec2> xy(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) xy[i] = {pts[i][0], pts[i][1]};

  // Collinearity check: all cross products vanish -> no spanning plane.
  bool spanning = false;
  for (size_t i = 2; i < xy.size() && !spanning; ++i)
    if (std::fabs(cross(xy[0].x, xy[0].y, xy[1].x, xy[1].y, xy[i].x, xy[i].y)) >
        1e-12)
      spanning = true;
  if (!spanning) {
    surf.note = "degenerate point set: projections are collinear";
    return surf;
  }

  const std::vector<Tri> tris = triangulate(xy);
  if (tris.empty()) {
    surf.note = "degenerate point set: triangulation is empty";
    return surf;
  }

  surf.x0 = surf.x1 = xy[0].x;
  surf.y0 = surf.y1 = xy[0].y;
  for (const auto& p : xy) {
    surf.x0 = std::min(surf.x0, p.x);
    surf.x1 = std::max(surf.x1, p.x);
    surf.y0 = std::min(surf.y0, p.y);
    surf.y1 = std::max(surf.y1, p.y);
  }
  surf.z.assign(size_t(resolution) * resolution,
                std::numeric_limits<double>::quiet_NaN());
  const double eps = 1e-9 * (std::fabs(surf.x1 - surf.x0) +
                             std::fabs(surf.y1 - surf.y0) + 1.0);
  for (int iy = 0; iy < resolution; ++iy) {
    const double gy = surf.y0 + (surf.y1 - surf.y0) * iy / (resolution - 1);
    for (int ix = 0; ix < resolution; ++ix) {
      const double gx = surf.x0 + (surf.x1 - surf.x0) * ix / (resolution - 1);
      for (const Tri& t : tris) {
        const Vec2 &A = xy[t.a], &B = xy[t.b], &C = xy[t.c];
        const double area = cross(A.x, A.y, B.x, B.y, C.x, C.y);
        if (std::fabs(area) < 1e-14) continue;
        const double wa = cross(B.x, B.y, C.x, C.y, gx, gy) / area;
        const double wb = cross(C.x, C.y, A.x, A.y, gx, gy) / area;
        const double wc = cross(A.x, A.y, B.x, B.y, gx, gy) / area;
        if (wa >= -eps && wb >= -eps && wc >= -eps) {
          surf.z[size_t(iy) * resolution + ix] =
              wa * pts[t.a][2] + wb * pts[t.b][2] + wc * pts[t.c][2];
          break;
        }
      }
    }
  }
  surf.ok = true;
  return surf;
}

}  // namespace sagin
