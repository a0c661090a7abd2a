#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace besselmu {

// Error taxonomy. The CLI maps these onto exit codes 1 (domain) and 2
// (truncation / quadrature).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Drift and barrier of the killed BES(3, mu) diffusion.
///
/// mu = 0 is the BES(3) limit. In that limit every sinh(mu a) is replaced by a,
/// so densities are taken with respect to y^2 dy instead of sinh^2(mu y) dy.
struct ProcessParams {
    double mu = 1.0;
    double r0 = 1.0;
};

enum class Representation { Auto, Spectral, Image };

std::string_view to_string(Representation rep);
Representation parse_representation(std::string_view name);

struct EvalConfig {
    double abs_tol = 1e-12;
    /// Truncation also stops only once the tail is below rel_tol times the
    /// summed term magnitudes, so tiny values keep their leading digits.
    double rel_tol = 1e-14;
    Representation rep_policy = Representation::Auto;
    int max_terms = 10'000;
    /// Auto selects Image when t / r0^2 < crossover_ratio.
    double crossover_ratio = 0.25;
};

/// A series-evaluated density together with its certified truncation bound.
struct DensityResult {
    double value = 0.0;       ///< max(raw, 0)
    double raw = 0.0;         ///< unclamped partial sum
    double log_value = 0.0;   ///< log(raw), -inf when raw <= 0; finite even if value underflows
    double err_bound = 0.0;
    Representation rep_used = Representation::Spectral;
    int terms_used = 0;
};

void validate_params(const ProcessParams& params);
void validate_config(const EvalConfig& cfg);

struct ValidateOptions {
    bool allow_x_zero = false;
    bool allow_y_zero = false;
};

/// Checks t > 0, 0 < x < r0 and, if given, 0 < y < r0. Throws DomainError
/// naming the violated constraint.
void validate(const ProcessParams& params, double t, double x,
              std::optional<double> y = std::nullopt, ValidateOptions opts = {});

/// Supremum-style check: t > 0, 0 < x < y. The barrier r0 is ignored.
void validate_supremum(double mu, double t, double x, double y);

/// Image or Spectral, resolving Auto from t / r0^2.
Representation choose_representation(const EvalConfig& cfg, double t, double r0);

}  // namespace besselmu
