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
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "mpmue/errors.hpp"
#include "mpmue/numeric.hpp"

namespace mpmue::numeric {
namespace {

// Kronrod abscissae on [-1, 1] (positive half, descending) and weights.
// Odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Piece {
  double a;
  double b;
  double value;
  double err;
  bool operator<(const Piece& other) const { return err < other.err; }
};

class Integrand {
 public:
  Integrand(const ScalarFn& f, double tail_origin, bool mapped)
      : f_(f), origin_(tail_origin), mapped_(mapped) {}

  double operator()(double u) {
    ++evaluations;
    double x = u;
    double jac = 1.0;
    if (mapped_) {
      const double w = 1.0 - u;
      x = origin_ + u / w;
      jac = 1.0 / (w * w);
    }
    const double y = f_(x);
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "integrate: non-finite integrand value " << y << " at x = " << x;
      throw NumericError(msg.str());
    }
    return y == 0.0 ? 0.0 : y * jac;
  }

  std::size_t evaluations = 0;

 private:
  const ScalarFn& f_;
  double origin_;
  bool mapped_;
};

// 15-point Kronrod rule with the QUADPACK error heuristic.
Piece gauss_kronrod(Integrand& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double result_k = fc * kWgk[7];
  double result_g = fc * kWg[3];
  double resabs = std::fabs(result_k);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = g(center - dx);
    f2[j] = g(center + dx);
    const double sum = f1[j] + f2[j];
    result_k += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) result_g += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * result_k;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  }
  const double ah = std::fabs(half);
  result_k *= half;
  result_g *= half;
  resabs *= ah;
  resasc *= ah;

  double err = std::fabs(result_k - result_g);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return Piece{a, b, result_k, err};
}

}  // namespace

QuadResult integrate(const ScalarFn& f, const Interval& range,
                     const QuadOptions& options,
                     std::span<const double> breakpoints) {
  if (!std::isfinite(range.lo())) {
    throw DomainError("integrate: lower limit must be finite");
  }
  std::vector<double> cuts{range.lo()};
  std::vector<double> inner;
  for (double b : breakpoints) {
    if (std::isfinite(b) && b > range.lo() && b < range.hi()) inner.push_back(b);
  }
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  cuts.insert(cuts.end(), inner.begin(), inner.end());

  const bool tail = range.semi_infinite();
  if (!tail) cuts.push_back(range.hi());

  // Finite segments share one integrand; the tail gets its own mapping.
  Integrand finite_part(f, 0.0, false);
  Integrand tail_part(f, cuts.back(), true);

  struct Tagged {
    Piece piece;
    bool mapped;
    bool operator<(const Tagged& o) const { return piece < o.piece; }
  };
  std::priority_queue<Tagged> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Piece p = gauss_kronrod(finite_part, cuts[i], cuts[i + 1]);
    heap.push({p, false});
    total += p.value;
    total_err += p.err;
  }
  if (tail) {
    const Piece p = gauss_kronrod(tail_part, 0.0, 1.0);
    heap.push({p, true});
    total += p.value;
    total_err += p.err;
  }

  std::size_t pieces = heap.size();
  while (total_err > std::max(options.abs_tol, options.rel_tol * std::fabs(total)) &&
         pieces < options.max_subdivisions) {
    const Tagged worst = heap.top();
    const double mid = 0.5 * (worst.piece.a + worst.piece.b);
    // Stop splitting once the interval is at roundoff resolution.
    if (mid <= worst.piece.a || mid >= worst.piece.b ||
        std::fabs(worst.piece.b - worst.piece.a) <
            100.0 * kEps * std::max(1.0, std::fabs(mid))) {
      break;
    }
    heap.pop();
    Integrand& g = worst.mapped ? tail_part : finite_part;
    const Piece left = gauss_kronrod(g, worst.piece.a, mid);
    const Piece right = gauss_kronrod(g, mid, worst.piece.b);
    total += left.value + right.value - worst.piece.value;
    total_err += left.err + right.err - worst.piece.err;
    heap.push({left, worst.mapped});
    heap.push({right, worst.mapped});
    ++pieces;
  }

  // Re-sum to shed the drift of incremental updates.
  double value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().piece.value;
    err += heap.top().piece.err;
    heap.pop();
  }
  return QuadResult{value, err, finite_part.evaluations + tail_part.evaluations};
}

QuadResult integrate(const ScalarFn& f, const Interval& range, double tol,
                     std::span<const double> breakpoints) {
  if (!(tol >= 0.0)) throw DomainError("integrate: tol must be non-negative");
  QuadOptions options;
  options.rel_tol = tol;
  options.abs_tol = tol * 1e-3;
  return integrate(f, range, options, breakpoints);
}

}  // namespace mpmue::numeric
