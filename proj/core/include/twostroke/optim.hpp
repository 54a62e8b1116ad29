// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

namespace twostroke {

struct MinimizeOptions {
  int max_iterations = 200;
  double tol = 1e-9;          // simplex size at which to stop
  double initial_step = 0.5;  // spread of the starting simplex around x0
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0;
  int iterations = 0;
  bool converged = false;          // simplex collapsed below tol
  std::vector<double> best_trace;  // best-so-far value, one entry per iteration
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Nelder-Mead simplex search with the standard reflection/expansion/
/// contraction/shrink coefficients. Deterministic; stops when the simplex
/// diameter drops below tol or the iteration budget is exhausted.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const MinimizeOptions& opts = {});

}  // namespace twostroke
