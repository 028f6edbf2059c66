#pragma once

#include <functional>
#include <vector>

namespace epm {

// Adaptive Gauss-Kronrod 7-15 integration over [a, b], splitting first at the
// supplied breakpoints (spline knots lose smoothness there).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints = {}, double abs_tol = 1e-13,
                 int max_depth = 40);

}  // namespace epm
