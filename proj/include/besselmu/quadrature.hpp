#pragma once

#include <functional>
#include <vector>

namespace besselmu {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
};

/// Adaptive Gauss-Kronrod (61 point) over the consecutive intervals of
/// `points`, which must be sorted with at least two entries. Throws
/// QuadratureError when the estimate misses max(rel_tol * L1, abs_tol).
QuadratureResult integrate(const std::function<double(double)>& f, const std::vector<double>& points,
                           double rel_tol = 1e-12, double abs_tol = 0.0);

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12, double abs_tol = 0.0);

/// Breakpoints for an integrand concentrated near `center` with width
/// `width`: lo, hi and center + k * width for k in {-8,-4,-2,-1,0,1,2,4,8}
/// clipped to (lo, hi).
std::vector<double> peak_breaks(double lo, double hi, double center, double width);

}  // namespace besselmu
