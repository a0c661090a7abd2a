#pragma once

#include "besselmu/model.hpp"

namespace besselmu {

// Law of the exit time tau_{r0} = inf{s : Z_s > r0}. Since
// P^x(M_t < r0) = P^x(tau_{r0} > t), survival doubles as the supremum CDF.

struct SurvivalResult {
    double value = 0.0;             ///< P(tau > t), clamped to [0, 1]
    double raw = 0.0;               ///< unclamped
    double exit_probability = 0.0;  ///< P(tau <= t), accurate when small in the image representation
    double err_bound = 0.0;
    Representation rep_used = Representation::Spectral;
    int terms_used = 0;
};

struct ExitLawPoint {
    double t = 0.0;
    double x = 0.0;
    double survival = 0.0;
    double survival_raw = 0.0;
    double density = 0.0;  ///< gamma^{r0}(t, x)
    double err_bound = 0.0;
};

SurvivalResult survival_spectral(const ProcessParams& params, double t, double x,
                                 const EvalConfig& cfg = {});
SurvivalResult survival_image(const ProcessParams& params, double t, double x,
                              const EvalConfig& cfg = {});
SurvivalResult survival(const ProcessParams& params, double t, double x, const EvalConfig& cfg = {});

DensityResult exit_density_spectral(const ProcessParams& params, double t, double x,
                                    const EvalConfig& cfg = {});
DensityResult exit_density_image(const ProcessParams& params, double t, double x,
                                 const EvalConfig& cfg = {});
DensityResult exit_density(const ProcessParams& params, double t, double x,
                           const EvalConfig& cfg = {});

ExitLawPoint exit_law(const ProcessParams& params, double t, double x, const EvalConfig& cfg = {});

/// E^x(tau_{r0}) = (r0 coth(mu r0) - x coth(mu x)) / mu; (r0^2 - x^2)/3 at mu = 0.
/// x = 0 is allowed.
double mean_exit_time(const ProcessParams& params, double x);

/// Arguments for evaluating gamma^{r0}(t, x) on the unit interval:
/// gamma^{r0}(t, x) = factor * gamma^1(t / r0^2, x / r0) with the same mu.
struct GammaRescale {
    ProcessParams params;  ///< {mu, 1}
    double t = 0.0;
    double x = 0.0;
    double factor = 1.0;
    /// The factor as the scaling display prints it, without sinh(mu r0) and
    /// with mu in place of mu^2. Kept for the regression test showing it fails.
    double printed_factor = 1.0;
};

/// factor = sinh(mu r0) sinh(mu x / r0) / (sinh(mu) sinh(mu x) r0^2)
///          * exp(-mu^2 t (1 - 1/r0^2) / 2).
GammaRescale gamma_rescale(const ProcessParams& params, double t, double x);

}  // namespace besselmu
