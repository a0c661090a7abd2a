#pragma once

#include "besselmu/model.hpp"

namespace besselmu {

// Density of the running maximum M_t = sup_{s <= t} Z_s started at x, taken
// with respect to Lebesgue measure dy (it is a density in the level, not in
// the speed measure). The barrier r0 of ProcessParams is ignored.

struct SupremumPoint {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double density = 0.0;  ///< max(raw, 0)
    double raw = 0.0;
    double log_density = 0.0;
    double err_bound = 0.0;
    Representation rep_used = Representation::Spectral;
    int terms_used = 0;
    /// Central difference of P^x(tau_y > t) in y; NaN unless requested.
    double fd_density = 0.0;
};

/// d/dy P^x(M_t < y), differentiating the survival series term by term in
/// the barrier. Set fd_check to also fill fd_density.
SupremumPoint sup_density(const ProcessParams& params, double t, double x, double y,
                          const EvalConfig& cfg = {}, bool fd_check = false);

SupremumPoint sup_density_spectral(const ProcessParams& params, double t, double x, double y,
                                   const EvalConfig& cfg = {});
SupremumPoint sup_density_image(const ProcessParams& params, double t, double x, double y,
                                const EvalConfig& cfg = {});

/// Central difference with step h = max(1e-6 y, 1e-8). Below the crossover
/// it differentiates P(tau_y <= t), which keeps relative accuracy when small.
double sup_density_fd(const ProcessParams& params, double t, double x, double y,
                      const EvalConfig& cfg = {});

/// Elementary two-sided estimate of m(t; x, y), no constants attached.
double sup_density_estimate(const ProcessParams& params, double t, double x, double y);
double log_sup_density_estimate(const ProcessParams& params, double t, double x, double y);

}  // namespace besselmu
