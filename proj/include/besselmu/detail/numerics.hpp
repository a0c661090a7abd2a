#pragma once

// Shared numerical plumbing for the series evaluators. Not part of the
// public API.

#include <cmath>
#include <limits>
#include <numbers>

#include "besselmu/model.hpp"

namespace besselmu::detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// log(sinh(z)) for z > 0 without overflow.
inline double log_sinh(double z)
{
    if (z > 20.0) return z - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * z));
    return std::log(std::sinh(z));
}

/// The scale function S(a) = sinh(mu a), or S(a) = a when mu = 0.
///
/// Everything that divides by sinh(mu x) goes through here so the mu = 0 limit
/// and large mu*a are handled in one place.
struct SpeedScale {
    double mu;

    double log_S(double a) const { return mu > 0.0 ? log_sinh(mu * a) : std::log(a); }

    /// S'(0): mu, or 1 in the mu = 0 limit.
    double S_prime0() const { return mu > 0.0 ? mu : 1.0; }

    /// log(a / S(a)), continuous at a = 0.
    double log_a_over_S(double a) const
    {
        if (a == 0.0) return -std::log(S_prime0());
        return std::log(a) - log_S(a);
    }

    /// S'(a) / S(a) = mu coth(mu a), or 1/a.
    double dlog_S(double a) const { return mu > 0.0 ? mu / std::tanh(mu * a) : 1.0 / a; }

    /// S(a) / S(b).
    double ratio(double a, double b) const
    {
        if (mu == 0.0) return a / b;
        if (mu * std::max(a, b) < 20.0) return std::sinh(mu * a) / std::sinh(mu * b);
        return std::exp(log_S(a) - log_S(b));
    }

    /// Speed-measure density: sinh^2(mu y), or y^2 when mu = 0.
    double speed_density(double y) const
    {
        const double s = mu > 0.0 ? std::sinh(mu * y) : y;
        return s * s;
    }
};

/// phi(z) = (1 - e^{-z}) / z with phi(0) = 1.
inline double phi_expm1(double z)
{
    if (std::abs(z) < 1e-8) return 1.0 - 0.5 * z;
    return -std::expm1(-z) / z;
}

/// Upper bound on sum_{n > N} f(n) for positive log-concave f.
///
/// Log-concavity makes f(n+1)/f(n) nonincreasing, so the tail is dominated by
/// a geometric series started at f(N+1). Returns +inf when the ratio is not
/// yet below one.
template <typename F>
double log_concave_tail(F&& f, long N)
{
    const double first = f(static_cast<double>(N + 1));
    if (first == 0.0) return 0.0;
    const double second = f(static_cast<double>(N + 2));
    const double q = second / first;
    if (!(q < 1.0)) return kInf;
    return first / (1.0 - q);
}

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
        abs_ += std::abs(v);
    }
    double value() const { return sum_ + comp_; }
    double abs_total() const { return abs_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
};

/// True once a tail bound in scaled units satisfies both tolerances.
/// The physical tail is tail * exp(log_scale).
inline bool tail_ok(double tail, double abs_total, double log_scale, const EvalConfig& cfg)
{
    if (!(tail < kInf)) return false;
    if (tail == 0.0) return true;
    if (std::log(tail) + log_scale > std::log(cfg.abs_tol)) return false;
    return tail <= cfg.rel_tol * abs_total;
}

/// Scaled value mantissa * exp(log_scale) plus its truncation bound.
struct SeriesValue {
    double mantissa = 0.0;
    double tail = 0.0;
    double log_scale = 0.0;
    int terms = 0;
};

DensityResult to_density(const SeriesValue& s, Representation rep);

/// Scaled complementary error function exp(z^2) erfc(z), z >= 0.
double erfcx(double z);

}  // namespace besselmu::detail
