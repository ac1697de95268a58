#pragma once

#include <functional>

namespace coatplan::quad {

/// Adaptive Simpson integration of f over [lo, hi] to absolute tolerance
/// abs_tol, with Richardson correction on accepted panels.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, int max_depth = 60);

}  // namespace coatplan::quad
