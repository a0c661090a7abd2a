#include <doctest.h>

#include <cmath>

#include "besselmu/bounds.hpp"
#include "besselmu/exit.hpp"
#include "besselmu/kernels.hpp"
#include "besselmu/lemmas.hpp"
#include "besselmu/supremum.hpp"

// Values frozen from tools/oracles.py (30-digit mpmath). The oracle builds
// everything from Brownian motion killed outside (0, r0) and the h-transform
// by sinh(mu x); none of the library's series are reused.

using namespace besselmu;

namespace {

constexpr double kRel = 1e-11;

struct Row4 {
    double a, b, c, d, value;
};
struct Row5 {
    double a, b, c, d, e, value;
};
struct Row6 {
    double a, b, c, d, e, f;
};
struct Row3 {
    double a, b, c, value;
};
struct Row2 {
    double a, b, value;
};

// mu, t, x, y
constexpr Row4 kFree[] = {
    {1.0, 1.0, 1.0, 1.0, 0.15149074966466017},
    {0.5, 0.2, 0.3, 0.9, 4.7094233360287896},
    {4.0, 0.05, 1.0, 1.2, 0.00048354083702310346},
    {0.0, 1.0, 0.5, 2.0, 0.11198929517232319},
};
// mu, r0, t, x, y
constexpr Row5 kKilled[] = {
    {1.0, 1.0, 1.0, 0.5, 0.5, 0.032128545757258759},
    {1.0, 1.0, 0.05, 0.3, 0.4, 12.483979257421969},
    {0.5, 2.0, 0.3, 1.0, 1.5, 1.0407693808729151},
    {4.0, 0.5, 0.01, 0.1, 0.2, 6.0109942439777717},
    {0.0, 1.0, 0.2, 0.3, 0.6, 3.0661883265555452},
    {2.0, 1.0, 3.0, 0.7, 0.2, 1.1211187040577923e-9},
};
// mu, r0, t, x, survival, exit density
constexpr Row6 kExit[] = {
    {1.0, 1.0, 0.5, 0.5, 0.086101137681745088, 0.46794264924096277},
    {1.0, 1.0, 0.05, 0.3, 0.99340821520761471, 0.70007376768764637},
    {0.5, 2.0, 0.3, 1.0, 0.85096497994816417, 0.99611838833970693},
    {4.0, 0.5, 0.01, 0.1, 0.99947965865528201, 0.43630669416099049},
    {0.0, 1.0, 0.2, 0.3, 0.62041854913876947, 2.7745730060025562},
    {2.0, 1.0, 3.0, 0.7, 6.4362007757944525e-10, 4.4633779303126742e-9},
};
// mu, r0, x
constexpr Row3 kMean[] = {
    {1.0, 1.0, 0.5, 0.23105857863000488},
    {0.5, 2.0, 1.0, 0.92423431452001952},
    {4.0, 0.5, 0.1, 0.063866029045138803},
    {0.0, 1.0, 0.3, 0.30333333333333333},
    {0.05, 1.0, 0.5, 0.24994792968420687},
};
// mu, t, x, y
constexpr Row4 kSup[] = {
    {1.0, 1.0, 0.5, 1.0, 0.062545427272059159},
    {0.5, 0.1, 0.9, 1.0, 1.7916967807035523},
    {4.0, 0.01, 0.45, 0.5, 5.6848634872879946},
    {0.0, 1.0, 0.1, 2.0, 0.64824686470848604},
};
// t, w
constexpr Row2 kLambda[] = {
    {0.1, 0.3, 2.413219118430678},
    {1.0, 0.5, 0.022593967916138819},
    {4.0, 0.9, 2.5971843476197106e-9},
    {0.01, 0.05, 17.603266338214974},
};
// lemma, a, b, c
constexpr Row4 kLemma[] = {
    {1.0, 0.1, 0.5, 0.0, 0.10641691938444991},
    {1.0, 1.0, 10.0, 0.0, 259.21719579475639},
    {2.0, 5.0, 2.0, 1.0, 4.7480746324745315},
    {2.0, 10.0, 0.1, 0.5, 147.04367916232393},
    {3.0, 1.5, 0.5, 1.0, 3.7888408551439208},
    {3.0, 3.0, 2.0, 2.5, 1.1130903582111571},
    {4.0, 3.0, 2.0, 1.0, 4.7432800905886327},
    {4.0, 0.8, 0.5, 0.1, 3.3174595213151574},
};

}  // namespace

TEST_CASE("free density")
{
    for (const auto& r : kFree) CHECK(free_density({r.a, 1.0}, r.b, r.c, r.d).value == doctest::Approx(r.value).epsilon(kRel));
}

TEST_CASE("killed density, both representations")
{
    EvalConfig spectral, image;
    spectral.rep_policy = Representation::Spectral;
    image.rep_policy = Representation::Image;
    for (const auto& r : kKilled) {
        const ProcessParams p{r.a, r.b};
        CHECK(killed_density(p, r.c, r.d, r.e).value == doctest::Approx(r.value).epsilon(kRel));
        CHECK(killed_density(p, r.c, r.d, r.e, spectral).raw == doctest::Approx(r.value).epsilon(kRel));
        CHECK(killed_density(p, r.c, r.d, r.e, image).raw == doctest::Approx(r.value).epsilon(kRel));
    }
}

TEST_CASE("survival and exit density")
{
    for (const auto& r : kExit) {
        const ProcessParams p{r.a, r.b};
        CHECK(survival(p, r.c, r.d).raw == doctest::Approx(r.e).epsilon(kRel));
        CHECK(exit_density(p, r.c, r.d).raw == doctest::Approx(r.f).epsilon(kRel));
    }
}

TEST_CASE("mean exit time")
{
    for (const auto& r : kMean) CHECK(mean_exit_time({r.a, r.b}, r.c) == doctest::Approx(r.value).epsilon(kRel));
}

TEST_CASE("supremum density")
{
    for (const auto& r : kSup) CHECK(sup_density({r.a, 1.0}, r.b, r.c, r.d).density == doctest::Approx(r.value).epsilon(kRel));
}

TEST_CASE("lambda")
{
    for (const auto& r : kLambda) CHECK(lambda_eval(r.a, r.b).value == doctest::Approx(r.value).epsilon(kRel));
}

TEST_CASE("lemma integrals")
{
    for (const auto& r : kLemma)
        CHECK(lemma_check(static_cast<int>(r.a), r.b, r.c, r.d).integral == doctest::Approx(r.value).epsilon(kRel));
}
