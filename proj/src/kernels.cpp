#include "besselmu/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "besselmu/detail/numerics.hpp"
#include "besselmu/detail/spectral.hpp"

namespace besselmu {

using detail::CompensatedSum;
using detail::kPi;
using detail::SeriesValue;
using detail::SpeedScale;

namespace detail {

Endpoint make_endpoint(const SpeedScale& scale, double r0, double x)
{
    Endpoint e;
    if (x == 0.0) {
        e.at_zero = true;
        e.log_factor = std::log(kPi / (r0 * scale.S_prime0()));
        e.sin_base = 1.0;
    } else {
        e.theta = kPi * x / r0;
        e.log_factor = -scale.log_S(x);
        e.sin_base = std::abs(std::sin(e.theta));
    }
    return e;
}

double spectral_tail(const Endpoint& ex, const Endpoint* ey, int extra_power, double a, long N)
{
    auto tail_for = [&](int power) {
        return log_concave_tail(
            [&](double n) { return std::pow(n, power) * std::exp(-a * (n * n - 1.0)); }, N);
    };
    // Each endpoint factor obeys |f(n)| <= 1 and |f(n)| <= n |sin(theta)|.
    double best = kInf;
    const int px_lo = ex.at_zero ? 1 : 0;
    for (int px = px_lo; px <= 1; ++px) {
        const double cx = (px == 1) ? ex.sin_base : 1.0;
        if (!ey) {
            best = std::min(best, cx * tail_for(px + extra_power));
            continue;
        }
        const int py_lo = ey->at_zero ? 1 : 0;
        for (int py = py_lo; py <= 1; ++py) {
            const double cy = (py == 1) ? ey->sin_base : 1.0;
            best = std::min(best, cx * cy * tail_for(px + py + extra_power));
        }
    }
    return best;
}

[[noreturn]] void truncation_fail(const char* what, int max_terms)
{
    throw TruncationError(std::string(what) + ": tolerance not reached within max_terms = " +
                          std::to_string(max_terms));
}

}  // namespace detail

double speed_density(double mu, double y)
{
    return SpeedScale{mu}.speed_density(y);
}

DensityResult free_density(const ProcessParams& params, double t, double x, double y)
{
    if (!std::isfinite(params.mu) || params.mu < 0.0) throw DomainError("mu < 0");
    if (!std::isfinite(t) || t <= 0.0) throw DomainError("t <= 0 (t = " + std::to_string(t) + ")");
    if (!std::isfinite(x) || x < 0.0) throw DomainError("x < 0");
    if (!std::isfinite(y) || y < 0.0) throw DomainError("y < 0");

    const SpeedScale scale{params.mu};
    const double mu = params.mu;
    // e^{-(y-x)^2/2t} (1 - e^{-2xy/t}) / (S(x) S(y)) written as
    // (2/t) phi(2xy/t) (x/S(x)) (y/S(y)) e^{-(y-x)^2/2t}.
    SeriesValue s;
    s.log_scale = -0.5 * mu * mu * t - 0.5 * std::log(2.0 * kPi * t) + std::log(2.0 / t) +
                  scale.log_a_over_S(x) + scale.log_a_over_S(y) - (y - x) * (y - x) / (2.0 * t);
    s.mantissa = detail::phi_expm1(2.0 * x * y / t);
    s.terms = 1;
    return detail::to_density(s, Representation::Image);
}

DensityResult killed_density_spectral(const ProcessParams& params, double t, double x, double y,
                                      const EvalConfig& cfg)
{
    validate(params, t, x, y, {.allow_x_zero = true, .allow_y_zero = true});
    validate_config(cfg);

    const SpeedScale scale{params.mu};
    const double r0 = params.r0;
    const double mu = params.mu;
    const double a = kPi * kPi * t / (2.0 * r0 * r0);
    const auto ex = detail::make_endpoint(scale, r0, x);
    const auto ey = detail::make_endpoint(scale, r0, y);

    SeriesValue s;
    s.log_scale = std::log(2.0 / r0) - 0.5 * mu * mu * t - a + ex.log_factor + ey.log_factor;

    CompensatedSum sum;
    for (int n = 1; n <= cfg.max_terms; ++n) {
        const double dn = n;
        sum.add(ex.f(dn) * ey.f(dn) * std::exp(-a * (dn * dn - 1.0)));
        const double tail = detail::spectral_tail(ex, &ey, 0, a, n);
        if (detail::tail_ok(tail, sum.abs_total(), s.log_scale, cfg)) {
            s.mantissa = sum.value();
            s.tail = tail;
            s.terms = n;
            return detail::to_density(s, Representation::Spectral);
        }
    }
    detail::truncation_fail("killed_density_spectral", cfg.max_terms);
}

namespace {

// x = y = 0: the mixed second derivative of the image sum, divided by S'(0)^2.
DensityResult image_at_origin(const SpeedScale& scale, double r0, double t, const EvalConfig& cfg)
{
    const double mu = scale.mu;
    SeriesValue s;
    s.log_scale = -0.5 * mu * mu * t - 0.5 * std::log(2.0 * kPi * t) -
                  2.0 * std::log(scale.S_prime0()) + std::log(2.0);
    CompensatedSum sum;
    sum.add(1.0 / t);
    const double inv_t = 1.0 / t;
    auto bound = [&](double j) {
        return 2.0 * j * j * (inv_t + 4.0 * r0 * r0 * inv_t * inv_t) *
               std::exp(-2.0 * j * j * r0 * r0 * inv_t);
    };
    for (int k = 0; k < cfg.max_terms; ++k) {
        if (k > 0) {
            const double z = 2.0 * k * r0;
            sum.add(2.0 * (inv_t - z * z * inv_t * inv_t) * std::exp(-z * z * 0.5 * inv_t));
        }
        const double tail = detail::log_concave_tail(bound, k);
        if (detail::tail_ok(tail, sum.abs_total(), s.log_scale, cfg)) {
            s.mantissa = sum.value();
            s.tail = tail;
            s.terms = 2 * k + 1;
            return detail::to_density(s, Representation::Image);
        }
    }
    detail::truncation_fail("killed_density_image", cfg.max_terms);
}

}  // namespace

DensityResult killed_density_image(const ProcessParams& params, double t, double x, double y,
                                   const EvalConfig& cfg)
{
    validate(params, t, x, y, {.allow_x_zero = true, .allow_y_zero = true});
    validate_config(cfg);

    const SpeedScale scale{params.mu};
    const double r0 = params.r0;
    const double mu = params.mu;
    if (x > y) std::swap(x, y);
    if (y == 0.0) return image_at_origin(scale, r0, t, cfg);

    // Images are grouped four at a time: (k, -k-1) reflections of both the
    // direct and the mirrored Gaussian. Near x = 0 the pairs (A,B) and (C,D)
    // each carry an explicit factor x; near y = r0 the pairs (A,D) and (C,B)
    // carry an explicit factor u = r0 - y. Whichever factor is smaller is
    // pulled out of the sum so the cancellation happens analytically.
    const double u = r0 - y;
    const bool x_grouping = x <= u;
    const double small = x_grouping ? x : u;

    const double A0 = y - x;
    const double zmin = std::min({A0, y + x, 2.0 * r0 - y + x, 2.0 * r0 - y - x});
    const double two_t = 2.0 * t;

    SeriesValue s;
    s.log_scale = -0.5 * mu * mu * t - 0.5 * std::log(2.0 * kPi * t) - zmin * zmin / two_t;
    if (x_grouping)
        s.log_scale += scale.log_a_over_S(x) - scale.log_S(y);
    else
        s.log_scale += std::log(u) - scale.log_S(x) - scale.log_S(y);

    auto g = [&](double z) { return std::exp(-(z * z - zmin * zmin) / two_t); };
    // (g(a) - g(b)) / small, given b^2 - a^2 = small * m.
    auto gdiff = [&](double a, double b, double m) {
        const double sm = small * m;
        return (m / two_t) * detail::phi_expm1(std::abs(sm) / two_t) * (sm >= 0.0 ? g(a) : g(b));
    };
    auto bound = [&](double j) {
        const double z = 2.0 * j * r0;
        return (8.0 * j + 8.0) * r0 / t * std::exp(-(z * z - zmin * zmin) / two_t);
    };

    CompensatedSum sum;
    for (int k = 0; k < cfg.max_terms; ++k) {
        const double dk = k;
        const double A = 2.0 * dk * r0 + y - x;
        const double B = 2.0 * dk * r0 + y + x;
        const double C = 2.0 * (dk + 1.0) * r0 - y + x;
        const double D = 2.0 * (dk + 1.0) * r0 - y - x;
        if (x_grouping) {
            sum.add(gdiff(A, B, 8.0 * dk * r0 + 4.0 * y));
            sum.add(gdiff(C, D, -(8.0 * (dk + 1.0) * r0 - 4.0 * y)));
        } else {
            sum.add(gdiff(A, D, 2.0 * ((4.0 * dk + 2.0) * r0 - 2.0 * x)));
            sum.add(gdiff(C, B, -2.0 * ((4.0 * dk + 2.0) * r0 + 2.0 * x)));
        }
        const double tail = detail::log_concave_tail(bound, k);
        if (detail::tail_ok(tail, sum.abs_total(), s.log_scale, cfg)) {
            s.mantissa = sum.value();
            s.tail = tail;
            s.terms = 4 * (k + 1);
            return detail::to_density(s, Representation::Image);
        }
    }
    detail::truncation_fail("killed_density_image", cfg.max_terms);
}

DensityResult killed_density(const ProcessParams& params, double t, double x, double y,
                             const EvalConfig& cfg)
{
    validate_params(params);
    if (choose_representation(cfg, t, params.r0) == Representation::Image)
        return killed_density_image(params, t, x, y, cfg);
    return killed_density_spectral(params, t, x, y, cfg);
}

}  // namespace besselmu
