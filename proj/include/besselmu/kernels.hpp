#pragma once

#include "besselmu/model.hpp"

namespace besselmu {

// Transition densities of BES(3, mu).
//
// All densities are with respect to the speed measure m(dy) = sinh^2(mu y) dy
// (y^2 dy when mu = 0). Multiply by sinh^2(mu y) to get a Lebesgue density.
// Positions x = 0 or y = 0 are evaluated as the analytic limit.

/// Density of the unkilled process. params.r0 is ignored. err_bound is 0.
DensityResult free_density(const ProcessParams& params, double t, double x, double y);

/// Eigenfunction expansion, converges fast for large t / r0^2.
DensityResult killed_density_spectral(const ProcessParams& params, double t, double x, double y,
                                      const EvalConfig& cfg = {});

/// Sum over reflected Gaussian images, converges fast for small t / r0^2.
DensityResult killed_density_image(const ProcessParams& params, double t, double x, double y,
                                   const EvalConfig& cfg = {});

/// Dispatches on cfg.rep_policy.
DensityResult killed_density(const ProcessParams& params, double t, double x, double y,
                             const EvalConfig& cfg = {});

/// sinh^2(mu y), or y^2 when mu = 0.
double speed_density(double mu, double y);

}  // namespace besselmu
