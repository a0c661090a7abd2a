#include <doctest.h>

#include <cmath>
#include <vector>

#include "besselmu/kernels.hpp"
#include "besselmu/quadrature.hpp"

using namespace besselmu;

namespace {

const std::vector<ProcessParams> kParams = {{1.0, 1.0}, {0.5, 2.0}, {4.0, 0.5}, {0.0, 1.0}};

double killed_lebesgue(const ProcessParams& p, double t, double x, double y)
{
    return killed_density(p, t, x, y).value * speed_density(p.mu, y);
}

}  // namespace

TEST_CASE("free density integrates to one against the speed measure")
{
    for (double mu : {0.0, 0.5, 1.0, 3.0})
        for (double t : {0.05, 1.0, 4.0})
            for (double x : {0.2, 1.0}) {
                const ProcessParams p{mu, 1.0};
                const double hi = x + mu * t + 12.0 * std::sqrt(t);
                auto f = [&](double y) { return free_density(p, t, x, y).value * speed_density(mu, y); };
                const auto q = integrate(f, peak_breaks(0.0, hi, x + mu * t, std::sqrt(t)), 1e-12);
                CAPTURE(mu);
                CAPTURE(t);
                CAPTURE(x);
                CHECK(q.value == doctest::Approx(1.0).epsilon(1e-9));
            }
}

TEST_CASE("killed density is symmetric in (x, y)")
{
    for (const auto& p : kParams)
        for (double t : {0.01, 0.1, 1.0})
            for (double xf : {0.1, 0.4, 0.8})
                for (double yf : {0.05, 0.5, 0.95}) {
                    const double tt = t * p.r0 * p.r0;
                    const auto a = killed_density(p, tt, xf * p.r0, yf * p.r0);
                    const auto b = killed_density(p, tt, yf * p.r0, xf * p.r0);
                    CHECK(std::abs(a.raw - b.raw) <= a.err_bound + b.err_bound + 1e-13 * std::abs(a.raw));
                }
}

TEST_CASE("Chapman-Kolmogorov")
{
    struct Case {
        ProcessParams p;
        double s, t, x, y;
    };
    const std::vector<Case> cases = {{{1.0, 1.0}, 0.1, 0.2, 0.3, 0.6},
                                     {{1.0, 1.0}, 0.05, 0.5, 0.5, 0.5},
                                     {{0.5, 2.0}, 0.5, 0.7, 1.0, 0.4},
                                     {{4.0, 0.5}, 0.01, 0.03, 0.2, 0.3},
                                     {{0.0, 1.0}, 0.2, 0.2, 0.8, 0.1}};
    for (const auto& c : cases) {
        auto f = [&](double z) {
            return killed_density(c.p, c.s, c.x, z).value * killed_density(c.p, c.t, z, c.y).value *
                   speed_density(c.p.mu, z);
        };
        std::vector<double> pts = {0.0, std::min(c.x, c.y), std::max(c.x, c.y), c.p.r0};
        const auto q = integrate(f, pts, 1e-11);
        const double direct = killed_density(c.p, c.s + c.t, c.x, c.y).value;
        CHECK(std::abs(q.value - direct) <= 1e-8 * std::max(1.0, direct));
        CHECK(q.value == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("killed density is dominated by the free density")
{
    for (const auto& p : kParams)
        for (double t : {0.001, 0.05, 0.5, 5.0})
            for (double xf : {0.1, 0.5, 0.9})
                for (double yf : {0.1, 0.5, 0.9}) {
                    const double x = xf * p.r0, y = yf * p.r0;
                    const auto k = killed_density(p, t, x, y);
                    const auto f = free_density(p, t, x, y);
                    CHECK(k.raw >= -k.err_bound);
                    CHECK(k.raw <= f.value * (1.0 + 1e-12) + k.err_bound);
                }
}

TEST_CASE("killed density vanishes at the barrier and stays finite at the origin")
{
    for (const auto& p : kParams)
        for (double t : {0.01, 0.3, 2.0}) {
            const double x = 0.4 * p.r0;
            double prev = killed_density(p, t, x, p.r0 * (1 - 1e-2)).value;
            for (double e : {1e-3, 1e-4, 1e-6}) {
                const double v = killed_density(p, t, x, p.r0 * (1 - e)).value;
                CHECK(v <= prev * 1.0000001);
                prev = v;
            }
            CHECK(prev <= 1e-5 * killed_density(p, t, x, 0.5 * p.r0).value + 1e-300);
            const double at0 = killed_density(p, t, x, 0.0).value;
            const double near0 = killed_density(p, t, x, 1e-7 * p.r0).value;
            CHECK(std::isfinite(at0));
            CHECK(near0 == doctest::Approx(at0).epsilon(1e-6));
        }
}

TEST_CASE("representations agree at the crossover")
{
    for (const auto& p : kParams)
        for (double ratio : {0.1, 0.25, 1.0})
            for (double xf : {0.0, 0.2, 0.5, 0.9})
                for (double yf : {0.1, 0.5, 0.95}) {
                    const double t = ratio * p.r0 * p.r0;
                    const auto s = killed_density_spectral(p, t, xf * p.r0, yf * p.r0);
                    const auto i = killed_density_image(p, t, xf * p.r0, yf * p.r0);
                    CHECK(s.raw == doctest::Approx(i.raw).epsilon(1e-9));
                }
}

TEST_CASE("mu -> 0 is continuous once the measure is rescaled")
{
    // sinh^2(mu y) dy ~ mu^2 y^2 dy, so densities grow like 1 / mu^2.
    const double mu = 1e-7;
    for (double t : {0.02, 0.5})
        for (double x : {0.0, 0.3})
            for (double y : {0.2, 0.7}) {
                const double a = killed_density({0.0, 1.0}, t, x, y).value;
                const double b = mu * mu * killed_density({mu, 1.0}, t, x, y).value;
                CHECK(b == doctest::Approx(a).epsilon(1e-8));
                const double fa = free_density({0.0, 1.0}, t, x, y).value;
                const double fb = mu * mu * free_density({mu, 1.0}, t, x, y).value;
                CHECK(fb == doctest::Approx(fa).epsilon(1e-8));
            }
}

TEST_CASE("large mu r0 stays finite in log space")
{
    const auto d = killed_density({60.0, 1.0}, 0.3, 0.5, 0.6);
    CHECK(std::isfinite(d.log_value));
    const auto s = killed_density_spectral({60.0, 1.0}, 0.3, 0.5, 0.6);
    const auto i = killed_density_image({60.0, 1.0}, 0.3, 0.5, 0.6);
    CHECK(s.log_value == doctest::Approx(i.log_value).epsilon(1e-10));
}

TEST_CASE("err_bound is honest against a longer sum")
{
    EvalConfig loose;
    loose.abs_tol = 1e-6;
    loose.rel_tol = 1e-6;
    EvalConfig tight;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 1e-16;
    for (auto rep : {Representation::Spectral, Representation::Image}) {
        loose.rep_policy = tight.rep_policy = rep;
        for (double t : {0.02, 0.3}) {
            const auto a = killed_density({1.0, 1.0}, t, 0.3, 0.6, loose);
            const auto b = killed_density({1.0, 1.0}, t, 0.3, 0.6, tight);
            CHECK(std::abs(a.raw - b.raw) <= a.err_bound + b.err_bound + 1e-15);
        }
    }
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(killed_density({1.0, 1.0}, -1.0, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(killed_density({1.0, 1.0}, 1.0, 1.5, 0.5), DomainError);
    CHECK_THROWS_AS(free_density({1.0, 1.0}, 1.0, -0.5, 0.5), DomainError);
}

TEST_CASE("max_terms cap raises TruncationError")
{
    EvalConfig cfg;
    cfg.rep_policy = Representation::Spectral;
    cfg.max_terms = 2;
    CHECK_THROWS_AS(killed_density({1.0, 1.0}, 1e-3, 0.5, 0.5, cfg), TruncationError);
}
