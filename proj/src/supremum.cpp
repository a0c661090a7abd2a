#include "besselmu/supremum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "besselmu/detail/numerics.hpp"
#include "besselmu/detail/passage.hpp"
#include "besselmu/detail/spectral.hpp"
#include "besselmu/exit.hpp"

namespace besselmu {

using detail::CompensatedSum;
using detail::kPi;
using detail::SeriesValue;
using detail::SpeedScale;

namespace {

SupremumPoint make_point(double t, double x, double y, const SeriesValue& s, Representation rep)
{
    const auto d = detail::to_density(s, rep);
    SupremumPoint p;
    p.t = t;
    p.x = x;
    p.y = y;
    p.density = d.value;
    p.raw = d.raw;
    p.log_density = d.log_value;
    p.err_bound = d.err_bound;
    p.rep_used = rep;
    p.terms_used = d.terms_used;
    p.fd_density = std::numeric_limits<double>::quiet_NaN();
    return p;
}

}  // namespace

SupremumPoint sup_density_spectral(const ProcessParams& params, double t, double x, double y,
                                   const EvalConfig& cfg)
{
    validate_supremum(params.mu, t, x, y);
    validate_config(cfg);

    // Survival term n, with r = y the barrier, D_n = n^2 pi^2 + mu^2 r^2 and
    // theta_n = n pi x / r:
    //   (-1)^{n+1} (2 pi n / D_n) (S(r)/S(x)) sin(theta_n) e^{-(n^2 pi^2 / r^2 + mu^2) t / 2}.
    // Its r-derivative is the same prefactor times
    //   sin(theta_n) [S'(r)/S(r) - 2 mu^2 r / D_n + n^2 pi^2 t / r^3] - (n pi x / r^2) cos(theta_n).
    const SpeedScale scale{params.mu};
    const double mu = params.mu;
    const double r = y;
    const double a = kPi * kPi * t / (2.0 * r * r);
    const double mr2 = mu * mu * r * r;
    const double dls = scale.dlog_S(r);

    SeriesValue s;
    s.log_scale = scale.log_S(r) - scale.log_S(x) - 0.5 * mu * mu * t - a;

    // |2 pi n / D_n| <= 2 / (pi n) and the bracket is at most
    // (C0 + C2) + C1 n + C3 n^2 <= n^2 (C0 + C1 + C2 + C3).
    const double c_sum = dls + kPi * x / (r * r) + 2.0 * mu * mu * r / (kPi * kPi + mr2) +
                         kPi * kPi * t / (r * r * r);
    auto bound = [&](double n) { return 2.0 / kPi * c_sum * n * std::exp(-a * (n * n - 1.0)); };

    CompensatedSum sum;
    for (int n = 1; n <= cfg.max_terms; ++n) {
        const double dn = n;
        const double dn_pi = dn * kPi;
        const double D = dn_pi * dn_pi + mr2;
        const double th = dn_pi * x / r;
        const double bracket = std::sin(th) * (dls - 2.0 * mu * mu * r / D + dn_pi * dn_pi * t / (r * r * r)) -
                               dn_pi * x / (r * r) * std::cos(th);
        const double sign = (n % 2 == 1) ? 1.0 : -1.0;
        sum.add(sign * 2.0 * dn_pi / D * bracket * std::exp(-a * (dn * dn - 1.0)));
        const double tail = detail::log_concave_tail(bound, n);
        if (detail::tail_ok(tail, sum.abs_total(), s.log_scale, cfg)) {
            s.mantissa = sum.value();
            s.tail = tail;
            s.terms = n;
            return make_point(t, x, y, s, Representation::Spectral);
        }
    }
    detail::truncation_fail("sup_density_spectral", cfg.max_terms);
}

SupremumPoint sup_density_image(const ProcessParams& params, double t, double x, double y,
                                const EvalConfig& cfg)
{
    validate_supremum(params.mu, t, x, y);
    validate_config(cfg);

    // P(tau_r <= t) = R(r) sum_k [I(c_k) - I(d_k)], c_k, d_k = (2k+1) r -/+ x,
    // R(r) = S(r)/S(x). Differentiating in r at r = y:
    //   m = R [sum_k (2k+1) (-I'(c_k) + I'(d_k)) - (S'/S)(y) sum_k (I(c_k) - I(d_k))].
    const SpeedScale scale{params.mu};
    const double r = y;
    const double c0 = r - x;
    const detail::PassageKernel kernel{params.mu, t,
                                       detail::PassageKernel::scale_for(params.mu, t, c0)};
    const double dls = scale.dlog_S(r);

    SeriesValue s;
    s.log_scale = kernel.log_scale + scale.log_S(r) - scale.log_S(x);

    // Term k involves levels >= 2k r; both I and -I' are decreasing.
    auto bound = [&](double j) {
        const double c = 2.0 * j * r;
        return (2.0 * j + 1.0) * (kernel.neg_dcdf_bound(c) + dls * kernel.cdf_bound(c));
    };

    CompensatedSum sum;
    for (int k = 0; k < cfg.max_terms; ++k) {
        const double q = (2.0 * k + 1.0) * r;
        const double c = q - x;
        const double d = q + x;
        sum.add((2.0 * k + 1.0) * (kernel.neg_dcdf(c) - kernel.neg_dcdf(d)));
        sum.add(-dls * (kernel.cdf(c) - kernel.cdf(d)));
        const double next = 2.0 * (k + 1.0) * r;
        const double tail = next * next < t ? detail::kInf : detail::log_concave_tail(bound, k);
        if (detail::tail_ok(tail, sum.abs_total(), s.log_scale, cfg)) {
            s.mantissa = sum.value();
            s.tail = tail;
            s.terms = 2 * (k + 1);
            return make_point(t, x, y, s, Representation::Image);
        }
    }
    detail::truncation_fail("sup_density_image", cfg.max_terms);
}

double sup_density_fd(const ProcessParams& params, double t, double x, double y,
                      const EvalConfig& cfg)
{
    validate_supremum(params.mu, t, x, y);
    const double h = std::max(1e-6 * y, 1e-8);
    const bool image = choose_representation(cfg, t, y) == Representation::Image;
    auto at = [&](double r) {
        const ProcessParams p{params.mu, r};
        if (image) return -survival_image(p, t, x, cfg).exit_probability;
        return survival_spectral(p, t, x, cfg).raw;
    };
    return (at(y + h) - at(y - h)) / (2.0 * h);
}

SupremumPoint sup_density(const ProcessParams& params, double t, double x, double y,
                          const EvalConfig& cfg, bool fd_check)
{
    validate_supremum(params.mu, t, x, y);
    auto p = choose_representation(cfg, t, y) == Representation::Image
                 ? sup_density_image(params, t, x, y, cfg)
                 : sup_density_spectral(params, t, x, y, cfg);
    if (fd_check) p.fd_density = sup_density_fd(params, t, x, y, cfg);
    return p;
}

double log_sup_density_estimate(const ProcessParams& params, double t, double x, double y)
{
    validate_supremum(params.mu, t, x, y);
    const SpeedScale scale{params.mu};
    const double mu = params.mu;
    const double ym2 = (y * mu) * (y * mu);
    const double gap = y - x;
    const double st = std::sqrt(t);
    const double q = y * y + t * (ym2 + 1.0);
    return std::log(x * gap / (y * y * t)) + scale.log_S(y) - scale.log_S(x) +
           2.5 * std::log(y * y + t) + std::log1p(t * st / (y * y * y) + st / gap + st * mu) -
           std::log(q) - std::log(t + y * x) - gap * gap / (2.0 * t) -
           (ym2 + kPi * kPi) * t / (2.0 * y * y) -
           0.5 * std::log1p(gap * gap * y * y / (t * q));
}

double sup_density_estimate(const ProcessParams& params, double t, double x, double y)
{
    return std::exp(log_sup_density_estimate(params, t, x, y));
}

}  // namespace besselmu
