#include "besselmu/model.hpp"

#include <cmath>
#include <sstream>

namespace besselmu {

namespace {

template <typename... Parts>
[[noreturn]] void domain_fail(const Parts&... parts)
{
    std::ostringstream os;
    os.precision(17);
    (os << ... << parts);
    throw DomainError(os.str());
}

}  // namespace

std::string_view to_string(Representation rep)
{
    switch (rep) {
    case Representation::Auto: return "auto";
    case Representation::Spectral: return "spectral";
    case Representation::Image: return "image";
    }
    return "unknown";
}

Representation parse_representation(std::string_view name)
{
    if (name == "auto") return Representation::Auto;
    if (name == "spectral") return Representation::Spectral;
    if (name == "image") return Representation::Image;
    throw ConfigError("unknown representation '" + std::string(name) + "'");
}

void validate_params(const ProcessParams& params)
{
    if (!std::isfinite(params.r0) || params.r0 <= 0.0) domain_fail("r0 <= 0 (r0 = ", params.r0, ")");
    if (!std::isfinite(params.mu) || params.mu < 0.0) domain_fail("mu < 0 (mu = ", params.mu, ")");
}

void validate_config(const EvalConfig& cfg)
{
    if (!(cfg.abs_tol > 0.0)) throw ConfigError("abs_tol must be > 0");
    if (!(cfg.rel_tol > 0.0)) throw ConfigError("rel_tol must be > 0");
    if (cfg.max_terms < 1) throw ConfigError("max_terms must be >= 1");
    if (!(cfg.crossover_ratio > 0.0)) throw ConfigError("crossover_ratio must be > 0");
}

void validate(const ProcessParams& params, double t, double x, std::optional<double> y,
              ValidateOptions opts)
{
    validate_params(params);
    if (!std::isfinite(t) || t <= 0.0) domain_fail("t <= 0 (t = ", t, ")");
    if (!std::isfinite(x)) domain_fail("x is not finite");
    if (x < 0.0 || (x == 0.0 && !opts.allow_x_zero)) domain_fail("x <= 0 (x = ", x, ")");
    if (x >= params.r0) domain_fail("x >= r0 (x = ", x, ", r0 = ", params.r0, ")");
    if (y) {
        if (!std::isfinite(*y)) domain_fail("y is not finite");
        if (*y < 0.0 || (*y == 0.0 && !opts.allow_y_zero)) domain_fail("y <= 0 (y = ", *y, ")");
        if (*y >= params.r0) domain_fail("y >= r0 (y = ", *y, ", r0 = ", params.r0, ")");
    }
}

void validate_supremum(double mu, double t, double x, double y)
{
    if (!std::isfinite(mu) || mu < 0.0) domain_fail("mu < 0 (mu = ", mu, ")");
    if (!std::isfinite(t) || t <= 0.0) domain_fail("t <= 0 (t = ", t, ")");
    if (!std::isfinite(x) || x <= 0.0) domain_fail("x <= 0 (x = ", x, ")");
    if (!std::isfinite(y) || y <= x) domain_fail("y <= x (x = ", x, ", y = ", y, ")");
}

Representation choose_representation(const EvalConfig& cfg, double t, double r0)
{
    if (cfg.rep_policy != Representation::Auto) return cfg.rep_policy;
    return t / (r0 * r0) < cfg.crossover_ratio ? Representation::Image : Representation::Spectral;
}

}  // namespace besselmu
