#include <doctest.h>

#include <cmath>
#include <vector>

#include "besselmu/exit.hpp"
#include "besselmu/quadrature.hpp"
#include "besselmu/supremum.hpp"

using namespace besselmu;

TEST_CASE("analytic and finite-difference densities agree on the audit grid")
{
    for (double t : {0.01, 0.1, 1.0, 10.0})
        for (double mu : {0.0, 0.5, 1.0, 4.0})
            for (double y : {0.5, 1.0, 2.0})
                for (double xf : {0.1, 0.5, 0.9}) {
                    const auto p = sup_density({mu, 1.0}, t, xf * y, y, {}, true);
                    CHECK(p.density > 0.0);
                    if (p.density > 1e-10) CHECK(p.fd_density == doctest::Approx(p.density).epsilon(1e-5));
                }
}

TEST_CASE("sup density integrates to the survival CDF and to one")
{
    for (double mu : {0.0, 1.0, 3.0})
        for (double t : {0.05, 1.0})
            for (double x : {0.2, 1.0}) {
                auto m = [&](double y) { return sup_density({mu, 1.0}, t, x, y).density; };
                const double Y = x + 0.5 * std::sqrt(t);
                auto q = integrate(m, peak_breaks(x, Y, x, 0.1 * std::sqrt(t)), 1e-10, 1e-14);
                CHECK(q.value == doctest::Approx(survival({mu, Y}, t, x).raw).epsilon(1e-8));

                const double hi = x + mu * t + 14.0 * std::sqrt(t);
                q = integrate(m, peak_breaks(x, hi, x + mu * t, std::sqrt(t)), 1e-10, 1e-14);
                CHECK(q.value == doctest::Approx(1.0).epsilon(1e-6));
            }
}

TEST_CASE("spectral and image forms agree where both converge")
{
    for (double mu : {0.0, 1.0, 2.0})
        for (double t : {0.1, 0.25, 0.5})
            for (double xf : {0.2, 0.6}) {
                const auto s = sup_density_spectral({mu, 1.0}, t, xf, 1.0);
                const auto i = sup_density_image({mu, 1.0}, t, xf, 1.0);
                CHECK(s.raw == doctest::Approx(i.raw).epsilon(1e-9));
            }
}

TEST_CASE("estimate is positive and finite; log form is consistent")
{
    for (double mu : {0.0, 2.0})
        for (double t : {1e-3, 1.0, 30.0}) {
            const double e = sup_density_estimate({mu, 1.0}, t, 0.5, 1.0);
            CHECK(e >= 0.0);
            CHECK(std::isfinite(log_sup_density_estimate({mu, 1.0}, t, 0.5, 1.0)));
            if (e > 1e-300) CHECK(std::log(e) == doctest::Approx(log_sup_density_estimate({mu, 1.0}, t, 0.5, 1.0)));
        }
}

TEST_CASE("supremum domain")
{
    CHECK_THROWS_AS(sup_density({1.0, 1.0}, 1.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(sup_density({1.0, 1.0}, 0.0, 0.5, 1.0), DomainError);
    const auto p = sup_density({1.0, 1.0}, 1.0, 0.5, 3.0);
    CHECK(std::isnan(p.fd_density));
}
