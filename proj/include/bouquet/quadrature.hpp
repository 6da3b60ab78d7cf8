#pragma once

#include <cmath>
#include <functional>

#include "bouquet/core.hpp"

namespace bouquet {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

// Adaptive composite Simpson with absolute tolerance.  The integrands in this
// project are smooth away from isolated corner points, so plain Simpson with
// bisection refinement is enough.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-9, int max_depth = 48);

}  // namespace bouquet
