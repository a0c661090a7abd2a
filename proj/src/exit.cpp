#include "besselmu/exit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "besselmu/detail/numerics.hpp"
#include "besselmu/detail/passage.hpp"
#include "besselmu/detail/spectral.hpp"

namespace besselmu {

using detail::CompensatedSum;
using detail::kPi;
using detail::SeriesValue;
using detail::SpeedScale;

namespace {

SurvivalResult from_exit_probability(double log_scale, double mantissa, double tail, int terms)
{
    SurvivalResult r;
    r.exit_probability = mantissa * std::exp(log_scale);
    r.raw = 1.0 - r.exit_probability;
    r.value = std::clamp(r.raw, 0.0, 1.0);
    r.err_bound = tail * std::exp(log_scale);
    r.rep_used = Representation::Image;
    r.terms_used = terms;
    return r;
}

}  // namespace

SurvivalResult survival_spectral(const ProcessParams& params, double t, double x,
                                 const EvalConfig& cfg)
{
    validate(params, t, x, std::nullopt, {.allow_x_zero = true});
    validate_config(cfg);

    const SpeedScale scale{params.mu};
    const double r0 = params.r0;
    const double mu = params.mu;
    const double a = kPi * kPi * t / (2.0 * r0 * r0);
    const double mr2 = mu * mu * r0 * r0;
    const auto ex = detail::make_endpoint(scale, r0, x);
    const double log_scale = scale.log_S(r0) + ex.log_factor - 0.5 * mu * mu * t - a;

    // 2 pi n / (n^2 pi^2 + mu^2 r0^2) <= 2 / (pi n), so with |f(n)| <= 1 or
    // |f(n)| <= n sin(theta) each remaining term is at most coef * e^{-a(n^2-1)}.
    auto tail_at = [&](long N) {
        const double coef = ex.at_zero ? 2.0 / kPi
                                       : std::min(2.0 / (kPi * (N + 1.0)), 2.0 * ex.sin_base / kPi);
        return coef * detail::log_concave_tail(
                          [&](double n) { return std::exp(-a * (n * n - 1.0)); }, N);
    };

    CompensatedSum sum;
    for (int n = 1; n <= cfg.max_terms; ++n) {
        const double dn = n;
        const double sign = (n % 2 == 1) ? 1.0 : -1.0;
        sum.add(sign * 2.0 * kPi * dn / (dn * dn * kPi * kPi + mr2) * ex.f(dn) *
                std::exp(-a * (dn * dn - 1.0)));
        const double tail = tail_at(n);
        if (detail::tail_ok(tail, sum.abs_total(), log_scale, cfg)) {
            SurvivalResult r;
            r.raw = sum.value() * std::exp(log_scale);
            r.value = std::clamp(r.raw, 0.0, 1.0);
            r.exit_probability = 1.0 - r.raw;
            r.err_bound = tail * std::exp(log_scale);
            r.rep_used = Representation::Spectral;
            r.terms_used = n;
            return r;
        }
    }
    detail::truncation_fail("survival_spectral", cfg.max_terms);
}

SurvivalResult survival_image(const ProcessParams& params, double t, double x,
                              const EvalConfig& cfg)
{
    validate(params, t, x, std::nullopt, {.allow_x_zero = true});
    validate_config(cfg);

    // P(tau <= t) is the exit density integrated in time image by image:
    //   P(tau <= t) = S(r0)/S(x) sum_{k >= 0} [I((2k+1) r0 - x) - I((2k+1) r0 + x)].
    // At x = 0 the bracket over S(x) becomes -2 I'((2k+1) r0) / S'(0).
    const SpeedScale scale{params.mu};
    const double r0 = params.r0;
    const double c0 = r0 - x;
    const detail::PassageKernel kernel{params.mu, t,
                                       detail::PassageKernel::scale_for(params.mu, t, c0)};
    const bool at_zero = x == 0.0;
    const double log_scale = kernel.log_scale + scale.log_S(r0) -
                             (at_zero ? std::log(scale.S_prime0()) : scale.log_S(x));

    auto bound = [&](double j) {
        const double c = 2.0 * j * r0;
        return at_zero ? 2.0 * kernel.neg_dcdf_bound(c) : 2.0 * kernel.cdf_bound(c);
    };

    CompensatedSum sum;
    for (int k = 0; k < cfg.max_terms; ++k) {
        const double q = (2.0 * k + 1.0) * r0;
        if (at_zero)
            sum.add(2.0 * kernel.neg_dcdf(q));
        else
            sum.add(kernel.cdf(q - x) - kernel.cdf(q + x));
        const double next = 2.0 * (k + 1.0) * r0;
        const double tail =
            (at_zero && next * next < t) ? detail::kInf : detail::log_concave_tail(bound, k);
        if (detail::tail_ok(tail, sum.abs_total(), log_scale, cfg))
            return from_exit_probability(log_scale, sum.value(), tail, 2 * (k + 1));
    }
    detail::truncation_fail("survival_image", cfg.max_terms);
}

SurvivalResult survival(const ProcessParams& params, double t, double x, const EvalConfig& cfg)
{
    validate_params(params);
    const auto rep = choose_representation(cfg, t, params.r0);
    // The image form pairs levels r0 -/+ x and loses digits as x -> 0 (x > 0).
    if (rep == Representation::Image &&
        !(cfg.rep_policy == Representation::Auto && x > 0.0 && x < 1e-6 * params.r0))
        return survival_image(params, t, x, cfg);
    return survival_spectral(params, t, x, cfg);
}

DensityResult exit_density_spectral(const ProcessParams& params, double t, double x,
                                    const EvalConfig& cfg)
{
    validate(params, t, x, std::nullopt, {.allow_x_zero = true});
    validate_config(cfg);

    const SpeedScale scale{params.mu};
    const double r0 = params.r0;
    const double mu = params.mu;
    const double a = kPi * kPi * t / (2.0 * r0 * r0);
    const auto ex = detail::make_endpoint(scale, r0, x);

    SeriesValue s;
    s.log_scale = std::log(kPi / (r0 * r0)) + scale.log_S(r0) + ex.log_factor -
                  0.5 * mu * mu * t - a;

    // Alternating terms are combined in (odd, even) pairs before accumulation.
    CompensatedSum sum;
    for (int n = 1; n + 1 <= cfg.max_terms; n += 2) {
        const double n1 = n;
        const double n2 = n + 1.0;
        const double pair = n1 * ex.f(n1) * std::exp(-a * (n1 * n1 - 1.0)) -
                            n2 * ex.f(n2) * std::exp(-a * (n2 * n2 - 1.0));
        sum.add(pair);
        const double tail = detail::spectral_tail(ex, nullptr, 1, a, n + 1);
        if (detail::tail_ok(tail, sum.abs_total(), s.log_scale, cfg)) {
            s.mantissa = sum.value();
            s.tail = tail;
            s.terms = n + 1;
            return detail::to_density(s, Representation::Spectral);
        }
    }
    detail::truncation_fail("exit_density_spectral", cfg.max_terms);
}

DensityResult exit_density_image(const ProcessParams& params, double t, double x,
                                 const EvalConfig& cfg)
{
    validate(params, t, x, std::nullopt, {.allow_x_zero = true});
    validate_config(cfg);

    const SpeedScale scale{params.mu};
    const double r0 = params.r0;
    const double mu = params.mu;
    const double c0 = r0 - x;
    const double two_t = 2.0 * t;

    // Images k and -k-1 are paired: with q = (2k+1) r0, c = q - x, d = q + x,
    //   c e^{-c^2/2t} - d e^{-d^2/2t} = e^{-c^2/2t} (c - d e^{-2xq/t}),
    // and the factor x is divided out against S(x).
    SeriesValue s;
    s.log_scale = scale.log_S(r0) + scale.log_a_over_S(x) - 0.5 * mu * mu * t -
                  0.5 * std::log(2.0 * kPi) - 1.5 * std::log(t) - c0 * c0 / two_t;

    auto bound = [&](double j) {
        const double z = 2.0 * j * r0;
        return (2.0 + 4.0 * r0 * r0 / t) * (j + 1.0) * (2.0 * j + 1.0) *
               std::exp(-(z * z - c0 * c0) / two_t);
    };

    CompensatedSum sum;
    for (int k = 0; k < cfg.max_terms; ++k) {
        const double q = (2.0 * k + 1.0) * r0;
        const double c = q - x;
        const double d = q + x;
        const double gc = std::exp(-(c - c0) * (c + c0) / two_t);
        const double z = 2.0 * x * q / t;
        double pair;
        if (x > 0.0 && z >= 1.0)
            pair = (c - d * std::exp(-z)) / x * gc;
        else
            pair = (-2.0 + d * detail::phi_expm1(z) * 2.0 * q / t) * gc;
        sum.add(pair);
        const double tail = detail::log_concave_tail(bound, k);
        if (detail::tail_ok(tail, sum.abs_total(), s.log_scale, cfg)) {
            s.mantissa = sum.value();
            s.tail = tail;
            s.terms = 2 * (k + 1);
            return detail::to_density(s, Representation::Image);
        }
    }
    detail::truncation_fail("exit_density_image", cfg.max_terms);
}

DensityResult exit_density(const ProcessParams& params, double t, double x, const EvalConfig& cfg)
{
    validate_params(params);
    if (choose_representation(cfg, t, params.r0) == Representation::Image)
        return exit_density_image(params, t, x, cfg);
    return exit_density_spectral(params, t, x, cfg);
}

ExitLawPoint exit_law(const ProcessParams& params, double t, double x, const EvalConfig& cfg)
{
    const auto surv = survival(params, t, x, cfg);
    const auto dens = exit_density(params, t, x, cfg);
    return {t, x, surv.value, surv.raw, dens.value, surv.err_bound + dens.err_bound};
}

double mean_exit_time(const ProcessParams& params, double x)
{
    validate_params(params);
    if (!std::isfinite(x) || x < 0.0) throw DomainError("x < 0");
    if (x >= params.r0) throw DomainError("x >= r0");

    const double mu = params.mu;
    const double r0 = params.r0;
    if (mu * r0 < 0.1) {
        // z coth z = sum_k c_k z^{2k}; the k = 0 terms cancel exactly.
        static constexpr std::array<double, 8> c = {
            1.0,         1.0 / 3.0,           -1.0 / 45.0,          2.0 / 945.0,
            -1.0 / 4725.0, 2.0 / 93555.0, -1382.0 / 638512875.0, 4.0 / 18243225.0};
        double result = 0.0;
        const double mu2 = mu * mu;
        double mu_pow = 1.0;
        double r_pow = r0 * r0;
        double x_pow = x * x;
        for (std::size_t k = 1; k < c.size(); ++k) {
            result += c[k] * mu_pow * (r_pow - x_pow);
            mu_pow *= mu2;
            r_pow *= r0 * r0;
            x_pow *= x * x;
        }
        return result;
    }
    auto z_coth = [](double z) { return z == 0.0 ? 1.0 : z / std::tanh(z); };
    return (z_coth(mu * r0) - z_coth(mu * x)) / (mu * mu);
}

GammaRescale gamma_rescale(const ProcessParams& params, double t, double x)
{
    validate(params, t, x);
    const SpeedScale scale{params.mu};
    const double r0 = params.r0;
    const double mu = params.mu;
    const double log_factor = scale.log_S(r0) + scale.log_S(x / r0) - scale.log_S(1.0) -
                              scale.log_S(x) - 2.0 * std::log(r0) -
                              0.5 * mu * mu * t * (1.0 - 1.0 / (r0 * r0));
    GammaRescale out;
    out.params = {mu, 1.0};
    out.t = t / (r0 * r0);
    out.x = x / r0;
    out.factor = r0 == 1.0 ? 1.0 : std::exp(log_factor);
    out.printed_factor = std::exp(scale.log_S(x / r0) - scale.log_S(1.0) - scale.log_S(x) -
                                  2.0 * std::log(r0) - 0.5 * mu * t * (1.0 - 1.0 / (r0 * r0)));
    return out;
}

}  // namespace besselmu
