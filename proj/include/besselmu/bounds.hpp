#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "besselmu/model.hpp"

namespace besselmu {

// Elementary two-sided estimates and their auditors. Every envelope comes in
// a log form so ratios survive when the exact value underflows.

/// A signed series value; log_abs is log|value| (or -inf).
struct SeriesResult {
    double value = 0.0;
    double log_abs = 0.0;
    double err_bound = 0.0;
    Representation rep_used = Representation::Image;
    int terms_used = 0;
};

/// lambda_t(w) = (2 pi)^{-1/2} t^{-3/2} sum_k (w + 2k) e^{-(w + 2k)^2 / 2t}.
/// Odd and 2-periodic in w.
SeriesResult lambda_eval(double t, double w, const EvalConfig& cfg = {});

/// ss_y(v, t) = (2 pi)^{-1/2} y^{-3/2} sum_k (t - v + 2kt) e^{-(t - v + 2kt)^2 / 2y},
/// v <= t. Equal to lambda_{y/t^2}(1 - v/t) / t^2.
SeriesResult ss_eval(double y, double v, double t, const EvalConfig& cfg = {});

// Envelopes. Each throws DomainError outside its stated region.

/// r0 = 1, 0 < t <= 1/4, 0 < x < 1.
double gamma_envelope_small_t(double mu, double t, double x);
double log_gamma_envelope_small_t(double mu, double t, double x);

/// r0 = 1, t >= 1/4, 0 < x < 1.
double gamma_envelope_large_t(double mu, double t, double x);
double log_gamma_envelope_large_t(double mu, double t, double x);

/// r0 = 1, t > 0, 0 < x < 1.
double corollary1_envelope(double mu, double t, double x);
double log_corollary1_envelope(double mu, double t, double x);

/// t > 0, 0 < x < r0.
double gamma_envelope_global(double mu, double r0, double t, double x);
double log_gamma_envelope_global(double mu, double r0, double t, double x);

/// t > 0, 0 < x, y < r0. Symmetric in (x, y).
double killed_density_envelope(double mu, double r0, double t, double x, double y);
double log_killed_density_envelope(double mu, double r0, double t, double x, double y);

/// r0 = 1, 0 < t <= 1/4, 0 < x <= 1/2: x e^{-(1-x)^2/2t} / (sqrt(2 pi t^3) (t + x)).
double ss_envelope(double t, double x);
double log_ss_envelope(double t, double x);

/// Arguments for evaluating p^{r0}(t; x, y) on the unit interval with the
/// same mu: p^{r0}(t; x, y) = factor * p^1(t / r0^2; x / r0, y / r0).
struct KilledRescale {
    ProcessParams params;
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double factor = 1.0;
};

KilledRescale killed_density_rescale(const ProcessParams& params, double t, double x, double y);

// Audits.

enum class EnvelopeId { Theorem7, Theorem8, Corollary1, Theorem9, Theorem10, Theorem11, SsRemark };

std::string_view to_string(EnvelopeId id);
/// Accepts 7, 8, 9, 10, 11, cor1, ss.
EnvelopeId parse_envelope(std::string_view name);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Two-sided constants of each estimate. Envelope 11 has none and reports
/// (0, inf).
Interval envelope_interval(EnvelopeId id);

/// Axes of an audit grid. The meaning of x and y depends on the envelope:
///  - 7, 8, cor1 and ss: r0 = 1 and x is absolute; mu is unused for ss.
///  - 9 and 10: x and y are fractions of r0.
///  - 11: y is absolute and x is a fraction of y; r0 is unused.
struct AuditGrid {
    std::vector<double> mu;
    std::vector<double> r0;
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
};

AuditGrid default_grid(EnvelopeId id);

struct AuditPoint {
    double mu = 0.0;
    double r0 = 1.0;
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;  ///< 0 where the envelope has no y
};

struct BoundAudit {
    AuditPoint point;
    double exact = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
    double log_ratio = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;
    std::string region;
    std::string error;  ///< non-empty when the evaluation threw
    bool domain_error = false;  ///< the point lies outside the envelope's region
};

struct RegionSummary {
    std::string region;
    std::size_t count = 0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

struct AuditReport {
    EnvelopeId id = EnvelopeId::Theorem8;
    Interval interval;
    std::vector<BoundAudit> rows;
    std::size_t n_pass = 0;
    std::size_t n_fail = 0;
    std::size_t n_error = 0;         ///< includes n_domain_error
    std::size_t n_domain_error = 0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::vector<RegionSummary> regions;

    bool all_pass() const { return n_fail == 0 && n_error == 0; }
};

/// pass <=> lo (1 - 1e-9) <= ratio <= hi (1 + 1e-9).
bool within(double ratio, Interval iv);

/// Evaluates every grid point, in parallel. Throws GridError on an empty axis.
AuditReport audit(EnvelopeId id, const AuditGrid& grid, const EvalConfig& cfg = {});

/// Columns: envelope,mu,r0,t,x,y,exact,envelope_value,ratio,lo,hi,pass,region,error.
void write_audit_csv(std::ostream& os, const AuditReport& report);

}  // namespace besselmu
