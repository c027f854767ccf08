// Copyright 2026 The mobqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mobqc/optimize.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mobqc {
namespace {

using Point = std::vector<double>;

Point affine(const Point& a, const Point& b, double t) {  // a + t (b - a)
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  if (x0.empty()) throw std::invalid_argument("nelder_mead: empty start point");
  if (options.max_evaluations < 1) throw std::invalid_argument("nelder_mead: no budget");
  const std::size_t n = x0.size();

  int evals = 0;
  auto eval = [&](const Point& p) {
    ++evals;
    return f(p);
  };

  std::vector<Point> simplex{x0};
  for (std::size_t i = 0; i < n; ++i) {
    Point p = x0;
    p[i] += options.initial_step;
    simplex.push_back(std::move(p));
  }
  std::vector<double> values;
  for (const Point& p : simplex) values.push_back(eval(p));

  std::vector<std::size_t> order(n + 1);
  bool converged = false;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) diameter = std::max(diameter, distance(simplex[i], simplex[best]));
    if (diameter < options.diameter_tol) {
      converged = true;
      break;
    }
    if (evals >= options.max_evaluations) break;

    Point centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / static_cast<double>(n);
    }

    const Point reflected = affine(centroid, simplex[worst], -1.0);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const Point expanded = affine(centroid, simplex[worst], -2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    // Contract toward the better of the worst vertex and its reflection.
    const bool outside = fr < values[worst];
    const Point contracted = affine(centroid, outside ? reflected : simplex[worst], 0.5);
    const double fc = eval(contracted);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      simplex[i] = affine(simplex[best], simplex[i], 0.5);
      values[i] = eval(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[best], *best_it, evals, converged};
}

}  // namespace mobqc
