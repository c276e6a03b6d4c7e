// Copyright 2026 The mpmue Authors
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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mpmue/errors.hpp"
#include "mpmue/numeric.hpp"

namespace mpmue::numeric {
namespace {

using Point = std::vector<double>;

class BoxObjective {
 public:
  BoxObjective(const VectorFn& f, std::span<const Interval> bounds)
      : f_(f), bounds_(bounds.begin(), bounds.end()) {}

  void project(Point& x) const {
    for (std::size_t i = 0; i < bounds_.size() && i < x.size(); ++i) {
      x[i] = bounds_[i].clamp(x[i]);
    }
  }

  // Non-finite values count as +inf so the simplex moves away from them.
  double operator()(const Point& x) {
    ++evaluations;
    const double v = f_(x);
    return std::isfinite(v) ? v : kInf;
  }

  std::size_t evaluations = 0;

 private:
  const VectorFn& f_;
  std::vector<Interval> bounds_;
};

struct Simplex {
  std::vector<Point> pts;
  std::vector<double> vals;

  void sort() {
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<Point> p2;
    std::vector<double> v2;
    for (auto i : idx) {
      p2.push_back(pts[i]);
      v2.push_back(vals[i]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  }
};

Point affine(const Point& base, const Point& toward, double t) {
  Point out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    out[i] = base[i] + t * (toward[i] - base[i]);
  }
  return out;
}

// One Nelder-Mead run from `start` (standard coefficients 1, 2, 1/2, 1/2).
void run_nelder_mead(BoxObjective& obj, Point& best, double& best_val,
                     double tol, std::size_t max_evals, bool& converged) {
  const std::size_t n = best.size();
  Simplex s;
  s.pts.push_back(best);
  s.vals.push_back(best_val);
  for (std::size_t i = 0; i < n; ++i) {
    Point p = best;
    const double step = (p[i] != 0.0) ? 0.05 * std::fabs(p[i]) : 0.00025;
    p[i] += step;
    obj.project(p);
    if (p[i] == best[i]) {
      p[i] -= 2.0 * step;
      obj.project(p);
    }
    s.pts.push_back(p);
    s.vals.push_back(obj(p));
  }

  converged = false;
  while (obj.evaluations < max_evals) {
    s.sort();
    double fspread = 0.0;
    double xspread = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      fspread = std::max(fspread, std::fabs(s.vals[i] - s.vals[0]));
      for (std::size_t j = 0; j < n; ++j) {
        const double scale = std::max(1.0, std::fabs(s.pts[0][j]));
        xspread = std::max(xspread, std::fabs(s.pts[i][j] - s.pts[0][j]) / scale);
      }
    }
    const double fscale = std::max(1.0, std::fabs(s.vals[0]));
    if (std::isfinite(s.vals[0]) && fspread <= tol * fscale && xspread <= tol) {
      converged = true;
      break;
    }

    Point centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += s.pts[i][j] / n;
    }
    const Point& worst = s.pts[n];

    Point xr = affine(centroid, worst, -1.0);
    obj.project(xr);
    const double fr = obj(xr);
    if (fr < s.vals[0]) {
      Point xe = affine(centroid, worst, -2.0);
      obj.project(xe);
      const double fe = obj(xe);
      if (fe < fr) {
        s.pts[n] = std::move(xe);
        s.vals[n] = fe;
      } else {
        s.pts[n] = std::move(xr);
        s.vals[n] = fr;
      }
      continue;
    }
    if (fr < s.vals[n - 1]) {
      s.pts[n] = std::move(xr);
      s.vals[n] = fr;
      continue;
    }
    const bool outside = fr < s.vals[n];
    Point xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, worst, 0.5);
    obj.project(xc);
    const double fc = obj(xc);
    if (fc < std::min(fr, s.vals[n])) {
      s.pts[n] = std::move(xc);
      s.vals[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      s.pts[i] = affine(s.pts[0], s.pts[i], 0.5);
      obj.project(s.pts[i]);
      s.vals[i] = obj(s.pts[i]);
    }
  }
  s.sort();
  if (s.vals[0] <= best_val) {
    best = s.pts[0];
    best_val = s.vals[0];
  }
}

}  // namespace

MinimizeResult minimize(const VectorFn& f, std::span<const double> start,
                        std::span<const Interval> bounds, double tol) {
  if (start.empty()) throw DomainError("minimize: empty start vector");
  if (!bounds.empty() && bounds.size() != start.size()) {
    throw DomainError("minimize: bounds must match the dimension of start");
  }
  if (!(tol > 0.0)) throw DomainError("minimize: tol must be positive");

  BoxObjective obj(f, bounds);
  Point best(start.begin(), start.end());
  obj.project(best);
  double best_val = obj(best);
  if (!std::isfinite(best_val)) {
    throw NumericError("minimize: objective is not finite at the start point");
  }

  const std::size_t max_evals = 2000 * (best.size() + 1);
  bool converged = false;
  // Restart from the incumbent until a restart no longer improves it; a
  // collapsed simplex can otherwise stall short of the minimum.
  for (int restart = 0; restart < 8; ++restart) {
    const double before = best_val;
    run_nelder_mead(obj, best, best_val, tol, max_evals * (restart + 1), converged);
    if (restart > 0 && before - best_val <= tol * std::max(1.0, std::fabs(best_val))) {
      break;
    }
  }
  return MinimizeResult{best, best_val, obj.evaluations, converged};
}

}  // namespace mpmue::numeric
