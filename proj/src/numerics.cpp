#include "besselmu/detail/numerics.hpp"

#include <cmath>

namespace besselmu::detail {

DensityResult to_density(const SeriesValue& s, Representation rep)
{
    DensityResult r;
    r.raw = s.mantissa * std::exp(s.log_scale);
    r.value = r.raw > 0.0 ? r.raw : 0.0;
    r.log_value = s.mantissa > 0.0 ? std::log(s.mantissa) + s.log_scale : -kInf;
    r.err_bound = s.tail * std::exp(s.log_scale);
    r.rep_used = rep;
    r.terms_used = s.terms;
    return r;
}

double erfcx(double z)
{
    if (z < 0.0) return 2.0 * std::exp(z * z) - erfcx(-z);
    if (z < 4.0) return std::exp(z * z) * std::erfc(z);
    // Continued fraction erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
    // evaluated bottom-up with a fixed depth that is ample for z >= 4.
    constexpr int depth = 60;
    double frac = z;
    for (int k = depth; k >= 1; --k) frac = z + 0.5 * k / frac;
    return 1.0 / (std::sqrt(kPi) * frac);
}

}  // namespace besselmu::detail
