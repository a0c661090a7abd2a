#pragma once

#include <cmath>

#include "besselmu/detail/numerics.hpp"

namespace besselmu::detail {

/// Time-integrated image terms of the exit-time density.
///
/// For a level c > 0 and horizon t,
///   I(c) = int_0^t c exp(-c^2/2s - mu^2 s/2) / sqrt(2 pi s^3) ds
///   J(c) = int_0^t exp(-c^2/2s - mu^2 s/2) / sqrt(2 pi s) ds
/// with I = -dJ/dc and, from the heat equation,
///   -I'(c) = 2 exp(-c^2/2t - mu^2 t/2) / sqrt(2 pi t) + mu^2 J(c).
/// All values are returned multiplied by exp(-log_scale).
struct PassageKernel {
    double mu;
    double t;
    double log_scale;

    double log_E(double c) const { return -c * c / (2.0 * t) - 0.5 * mu * mu * t; }

    /// A log_scale that keeps the terms for levels >= c0 at most O(1).
    static double scale_for(double mu, double t, double c0)
    {
        const double log_e = -c0 * c0 / (2.0 * t) - 0.5 * mu * mu * t;
        return std::max(log_e, -mu * c0);
    }

    /// exp(log_E(c)) * erfcx(z), scaled.
    double scaled_ecx(double c, double z) const
    {
        const double e = std::exp(log_E(c) - log_scale);
        if (z >= 0.0) return erfcx(z) * e;
        // exp(log_E(c) + z^2) = exp(-mu c) when z = (c - mu t)/sqrt(2t).
        return 2.0 * std::exp(-mu * c - log_scale) - erfcx(-z) * e;
    }

    double cdf(double c) const
    {
        const double rt = std::sqrt(2.0 * t);
        return 0.5 * (scaled_ecx(c, (c - mu * t) / rt) + scaled_ecx(c, (c + mu * t) / rt));
    }

    double j_integral(double c) const
    {
        const double rt = std::sqrt(2.0 * t);
        const double delta = mu * std::sqrt(0.5 * t);
        if (delta < 1e-3) {
            const double z = c / rt;
            const double f0 = erfcx(z);
            const double f1 = 2.0 * z * f0 - 2.0 / std::sqrt(kPi);
            const double f2 = 2.0 * f0 + 2.0 * z * f1;
            const double f3 = 4.0 * f1 + 2.0 * z * f2;
            return -std::sqrt(0.5 * t) * (f1 + f3 * delta * delta / 6.0) *
                   std::exp(log_E(c) - log_scale);
        }
        return (scaled_ecx(c, (c - mu * t) / rt) - scaled_ecx(c, (c + mu * t) / rt)) / (2.0 * mu);
    }

    /// -I'(c), scaled.
    double neg_dcdf(double c) const
    {
        return 2.0 / std::sqrt(2.0 * kPi * t) * std::exp(log_E(c) - log_scale) +
               mu * mu * j_integral(c);
    }

    /// Scaled bounds on cdf and neg_dcdf at every level >= c. The neg_dcdf
    /// bound needs c^2 >= t.
    double cdf_bound(double c) const { return std::exp(-c * c / (2.0 * t) - log_scale); }
    double neg_dcdf_bound(double c) const
    {
        return (2.0 / std::sqrt(2.0 * kPi * t) + mu * mu * std::sqrt(t / (2.0 * kPi))) *
               std::exp(-c * c / (2.0 * t) - log_scale);
    }
};

}  // namespace besselmu::detail
