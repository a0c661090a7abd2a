#pragma once

#include <cmath>

#include "besselmu/detail/numerics.hpp"

namespace besselmu::detail {

/// The position-dependent factor sin(n pi x / r0) / S(x) of an eigenfunction
/// term, split as exp(log_factor) * f(n). At x = 0 the limit n pi / (r0 S'(0))
/// is used, so f(n) = n.
struct Endpoint {
    bool at_zero = false;
    double theta = 0.0;
    double log_factor = 0.0;
    double sin_base = 1.0;  ///< |sin(theta)|; |f(n)| <= n * sin_base

    double f(double n) const { return at_zero ? n : std::sin(n * theta); }
};

Endpoint make_endpoint(const SpeedScale& scale, double r0, double x);

/// Bound on sum_{n > N} |f_x(n) f_y(n)| n^extra_power e^{-a (n^2 - 1)}.
/// Pass ey = nullptr for a single endpoint factor.
double spectral_tail(const Endpoint& ex, const Endpoint* ey, int extra_power, double a, long N);

[[noreturn]] void truncation_fail(const char* what, int max_terms);

}  // namespace besselmu::detail
