// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace twostroke {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
  double diameter = 0;
  for (size_t i = 1; i < pts.size(); ++i) {
    double d2 = 0;
    for (size_t k = 0; k < pts[0].size(); ++k) {
      double delta = pts[i][k] - pts[0][k];
      d2 += delta * delta;
    }
    diameter = std::max(diameter, std::sqrt(d2));
  }
  return diameter;
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const MinimizeOptions& opts) {
  const int n = static_cast<int>(x0.size());
  if (n == 0) throw std::invalid_argument("empty parameter vector");
  if (opts.max_iterations < 1) {
    throw std::invalid_argument("iteration budget must be >= 1");
  }

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += opts.initial_step;
  std::vector<double> values(n + 1);
  for (int i = 0; i <= n; ++i) values[i] = f(pts[i]);

  std::vector<int> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
  };

  MinimizeResult result;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    sort_simplex();
    int best = order[0], worst = order[n], second_worst = order[n - 1];
    result.iterations = iter + 1;
    result.best_trace.push_back(values[best]);

    if (simplex_diameter(pts) < opts.tol) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;
    }

    auto blend = [&](double coeff) {
      std::vector<double> p(n);
      for (int k = 0; k < n; ++k) {
        p[k] = centroid[k] + coeff * (pts[worst][k] - centroid[k]);
      }
      return p;
    };

    std::vector<double> reflected = blend(-1.0);
    double f_reflected = f(reflected);

    if (f_reflected < values[best]) {
      std::vector<double> expanded = blend(-2.0);
      double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        pts[worst] = std::move(expanded);
        values[worst] = f_expanded;
      } else {
        pts[worst] = std::move(reflected);
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      pts[worst] = std::move(reflected);
      values[worst] = f_reflected;
      continue;
    }

    // Contract toward the better of the worst point and its reflection.
    double coeff = f_reflected < values[worst] ? -0.5 : 0.5;
    std::vector<double> contracted = blend(coeff);
    double f_contracted = f(contracted);
    if (f_contracted < std::min(values[worst], f_reflected)) {
      pts[worst] = std::move(contracted);
      values[worst] = f_contracted;
      continue;
    }

    // Shrink everything toward the best vertex.
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (int k = 0; k < n; ++k) {
        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      }
      values[i] = f(pts[i]);
    }
  }

  sort_simplex();
  result.x = pts[order[0]];
  result.value = values[order[0]];
  if (result.best_trace.empty() || result.best_trace.back() > result.value) {
    result.best_trace.push_back(result.value);
  }
  return result;
}

}  // namespace twostroke
