#include "besselmu/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "besselmu/detail/numerics.hpp"
#include "besselmu/detail/parallel.hpp"
#include "besselmu/exit.hpp"
#include "besselmu/grid.hpp"
#include "besselmu/kernels.hpp"
#include "besselmu/supremum.hpp"

namespace besselmu {

using detail::kPi;
using detail::SpeedScale;

namespace {

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * kPi);

void require(bool ok, const char* what)
{
    if (!ok) throw DomainError(what);
}

void check_mu(double mu) { require(std::isfinite(mu) && mu >= 0.0, "mu < 0"); }

}  // namespace

SeriesResult lambda_eval(double t, double w, const EvalConfig& cfg)
{
    require(std::isfinite(t) && t > 0.0, "t <= 0");
    require(std::isfinite(w), "w is not finite");

    // Reduce to w0 in [0, 1] by periodicity and oddness. There
    // lambda(w0) = (1 - w0) * gamma^1(t, 1 - w0) for the driftless process.
    double w0 = w - 2.0 * std::round(0.5 * w);
    double sign = 1.0;
    if (w0 < 0.0) {
        w0 = -w0;
        sign = -1.0;
    }
    SeriesResult r;
    r.rep_used = choose_representation(cfg, t, 1.0);
    if (w0 == 0.0 || w0 == 1.0) {
        r.log_abs = -detail::kInf;
        return r;
    }
    const double x = 1.0 - w0;
    const auto d = exit_density({0.0, 1.0}, t, x, cfg);
    r.log_abs = std::log(x) + d.log_value;
    r.value = sign * x * d.raw;
    r.err_bound = x * d.err_bound;
    r.rep_used = d.rep_used;
    r.terms_used = d.terms_used;
    return r;
}

SeriesResult ss_eval(double y, double v, double t, const EvalConfig& cfg)
{
    require(std::isfinite(y) && y > 0.0, "y <= 0");
    require(std::isfinite(t) && t > 0.0, "t <= 0");
    require(std::isfinite(v) && v <= t, "v > t");
    auto r = lambda_eval(y / (t * t), 1.0 - v / t, cfg);
    const double inv = 1.0 / (t * t);
    r.value *= inv;
    r.err_bound *= inv;
    r.log_abs -= 2.0 * std::log(t);
    return r;
}

double log_gamma_envelope_small_t(double mu, double t, double x)
{
    check_mu(mu);
    require(t > 0.0 && t <= 0.25, "t outside (0, 1/4]");
    require(x > 0.0 && x < 1.0, "x outside (0, 1)");
    const SpeedScale s{mu};
    return -kLogSqrt2Pi - 1.5 * std::log(t) + std::log(x * (1.0 - x) / (t + x)) + s.log_S(1.0) -
           s.log_S(x) - 0.5 * mu * mu * t - (1.0 - x) * (1.0 - x) / (2.0 * t);
}

double log_gamma_envelope_large_t(double mu, double t, double x)
{
    check_mu(mu);
    require(std::isfinite(t) && t >= 0.25, "t < 1/4");
    require(x > 0.0 && x < 1.0, "x outside (0, 1)");
    const SpeedScale s{mu};
    return std::log(kPi * std::sin(kPi * x)) + s.log_S(1.0) - s.log_S(x) -
           0.5 * (mu * mu + kPi * kPi) * t;
}

double log_corollary1_envelope(double mu, double t, double x)
{
    check_mu(mu);
    require(std::isfinite(t) && t > 0.0, "t <= 0");
    require(x > 0.0 && x < 1.0, "x outside (0, 1)");
    const SpeedScale s{mu};
    return std::log(x * (1.0 - x) / (t + x)) + s.log_S(1.0) - s.log_S(x) + 2.5 * std::log1p(t) -
           kLogSqrt2Pi - 1.5 * std::log(t) - 0.5 * (mu * mu + kPi * kPi) * t -
           (1.0 - x) * (1.0 - x) / (2.0 * t);
}

double log_gamma_envelope_global(double mu, double r0, double t, double x)
{
    check_mu(mu);
    require(std::isfinite(r0) && r0 > 0.0, "r0 <= 0");
    require(std::isfinite(t) && t > 0.0, "t <= 0");
    require(x > 0.0 && x < r0, "x outside (0, r0)");
    const SpeedScale s{mu};
    const double rm = r0 * mu;
    return std::log(x * (r0 - x) / (t + r0 * x)) + s.log_S(r0) - s.log_S(x) +
           2.5 * std::log(r0 * r0 + t) - kLogSqrt2Pi - 4.0 * std::log(r0) - 1.5 * std::log(t) -
           (rm * rm + kPi * kPi) * t / (2.0 * r0 * r0) - (r0 - x) * (r0 - x) / (2.0 * t);
}

double log_killed_density_envelope(double mu, double r0, double t, double x, double y)
{
    check_mu(mu);
    require(std::isfinite(r0) && r0 > 0.0, "r0 <= 0");
    require(std::isfinite(t) && t > 0.0, "t <= 0");
    require(x > 0.0 && x < r0, "x outside (0, r0)");
    require(y > 0.0 && y < r0, "y outside (0, r0)");
    const SpeedScale s{mu};
    const double rm = r0 * mu;
    return 2.5 * std::log(r0 * r0 + t) - 5.0 * std::log(r0) - s.log_S(x) - s.log_S(y) -
           0.5 * std::log(t) + std::min(0.0, std::log(x * y / t)) +
           std::min(0.0, std::log((r0 - x) * (r0 - y) / t)) -
           (rm * rm + kPi * kPi) * t / (2.0 * r0 * r0) - (x - y) * (x - y) / (2.0 * t);
}

double log_ss_envelope(double t, double x)
{
    require(t > 0.0 && t <= 0.25, "t outside (0, 1/4]");
    require(x > 0.0 && x <= 0.5, "x outside (0, 1/2]");
    return std::log(x / (t + x)) - kLogSqrt2Pi - 1.5 * std::log(t) -
           (1.0 - x) * (1.0 - x) / (2.0 * t);
}

double gamma_envelope_small_t(double mu, double t, double x)
{
    return std::exp(log_gamma_envelope_small_t(mu, t, x));
}
double gamma_envelope_large_t(double mu, double t, double x)
{
    return std::exp(log_gamma_envelope_large_t(mu, t, x));
}
double corollary1_envelope(double mu, double t, double x)
{
    return std::exp(log_corollary1_envelope(mu, t, x));
}
double gamma_envelope_global(double mu, double r0, double t, double x)
{
    return std::exp(log_gamma_envelope_global(mu, r0, t, x));
}
double killed_density_envelope(double mu, double r0, double t, double x, double y)
{
    return std::exp(log_killed_density_envelope(mu, r0, t, x, y));
}
double ss_envelope(double t, double x) { return std::exp(log_ss_envelope(t, x)); }

KilledRescale killed_density_rescale(const ProcessParams& params, double t, double x, double y)
{
    validate(params, t, x, y);
    const SpeedScale s{params.mu};
    const double r0 = params.r0;
    const double mu = params.mu;
    KilledRescale out;
    out.params = {mu, 1.0};
    out.t = t / (r0 * r0);
    out.x = x / r0;
    out.y = y / r0;
    out.factor = std::exp(s.log_S(x / r0) + s.log_S(y / r0) - s.log_S(x) - s.log_S(y) -
                          std::log(r0) - 0.5 * mu * mu * t * (1.0 - 1.0 / (r0 * r0)));
    return out;
}

std::string_view to_string(EnvelopeId id)
{
    switch (id) {
    case EnvelopeId::Theorem7: return "7";
    case EnvelopeId::Theorem8: return "8";
    case EnvelopeId::Corollary1: return "cor1";
    case EnvelopeId::Theorem9: return "9";
    case EnvelopeId::Theorem10: return "10";
    case EnvelopeId::Theorem11: return "11";
    case EnvelopeId::SsRemark: return "ss";
    }
    return "?";
}

EnvelopeId parse_envelope(std::string_view name)
{
    for (auto id : {EnvelopeId::Theorem7, EnvelopeId::Theorem8, EnvelopeId::Corollary1,
                    EnvelopeId::Theorem9, EnvelopeId::Theorem10, EnvelopeId::Theorem11,
                    EnvelopeId::SsRemark})
        if (to_string(id) == name) return id;
    throw ConfigError("unknown envelope '" + std::string(name) + "' (expected 7|8|9|10|11|cor1|ss)");
}

Interval envelope_interval(EnvelopeId id)
{
    switch (id) {
    case EnvelopeId::Theorem7: return {0.25, 4.02};
    case EnvelopeId::Theorem8: return {0.8, 1.2};
    case EnvelopeId::Corollary1: return {0.07, 24.0 * kPi};
    case EnvelopeId::Theorem9: return {0.07, 75.4};
    case EnvelopeId::Theorem10: return {0.0029, 2413.0};
    case EnvelopeId::Theorem11: return {0.0, detail::kInf};
    case EnvelopeId::SsRemark: return {0.25, 2.01};
    }
    return {0.0, detail::kInf};
}

AuditGrid default_grid(EnvelopeId id)
{
    const std::vector<double> mus{0.1, 1.0, 5.0};
    const auto x_unit = linspace(0.02, 0.98, 25);
    AuditGrid g;
    switch (id) {
    case EnvelopeId::Theorem7: {
        g.mu = mus;
        g.t = logspace(1e-3, 0.25, 12);
        g.t.back() = 0.25 - 1e-9;
        g.x = x_unit;
        break;
    }
    case EnvelopeId::Theorem8: {
        g.mu = mus;
        g.t = logspace(0.3, 20.0, 12);
        g.t.insert(g.t.begin(), 0.25 + 1e-9);
        g.x = x_unit;
        break;
    }
    case EnvelopeId::Corollary1:
        g.mu = mus;
        g.t = logspace(1e-3, 20.0, 20);
        g.x = x_unit;
        break;
    case EnvelopeId::Theorem9:
        g.mu = mus;
        g.r0 = {0.5, 1.0, 3.0};
        g.t = logspace(1e-3, 20.0, 12);
        g.x = linspace(0.05, 0.95, 10);
        break;
    case EnvelopeId::Theorem10:
        g.mu = mus;
        g.r0 = {0.5, 1.0, 3.0};
        g.t = logspace(1e-3, 20.0, 8);
        g.x = linspace(0.05, 0.95, 7);
        g.y = linspace(0.05, 0.95, 7);
        break;
    case EnvelopeId::Theorem11:
        g.mu = {0.0, 0.5, 1.0, 4.0};
        g.t = {0.01, 0.1, 1.0, 10.0};
        g.x = {0.1, 0.5, 0.9};
        g.y = {0.5, 1.0, 2.0};
        break;
    case EnvelopeId::SsRemark:
        g.t = linspace(0.0125, 0.25, 20);
        g.x = linspace(0.025, 0.5, 20);
        break;
    }
    return g;
}

bool within(double ratio, Interval iv)
{
    return ratio >= iv.lo * (1.0 - 1e-9) && ratio <= iv.hi * (1.0 + 1e-9);
}

namespace {

struct Evaluated {
    double log_exact;
    double log_envelope;
    std::string region;
};

std::string fmt(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

Evaluated evaluate(EnvelopeId id, const AuditPoint& p, const EvalConfig& cfg)
{
    switch (id) {
    case EnvelopeId::Theorem7:
        return {exit_density({p.mu, 1.0}, p.t, p.x, cfg).log_value,
                log_gamma_envelope_small_t(p.mu, p.t, p.x), p.x <= 0.5 ? "x<=1/2" : "x>1/2"};
    case EnvelopeId::Theorem8:
        return {exit_density({p.mu, 1.0}, p.t, p.x, cfg).log_value,
                log_gamma_envelope_large_t(p.mu, p.t, p.x), "all"};
    case EnvelopeId::Corollary1:
        return {exit_density({p.mu, 1.0}, p.t, p.x, cfg).log_value,
                log_corollary1_envelope(p.mu, p.t, p.x), p.t <= 0.25 ? "t<=1/4" : "t>1/4"};
    case EnvelopeId::Theorem9:
        return {exit_density({p.mu, p.r0}, p.t, p.x, cfg).log_value,
                log_gamma_envelope_global(p.mu, p.r0, p.t, p.x), "r0=" + fmt(p.r0)};
    case EnvelopeId::Theorem10:
        return {killed_density({p.mu, p.r0}, p.t, p.x, p.y, cfg).log_value,
                log_killed_density_envelope(p.mu, p.r0, p.t, p.x, p.y), "r0=" + fmt(p.r0)};
    case EnvelopeId::Theorem11: {
        const double gap = p.y - p.x;
        return {sup_density({p.mu, 1.0}, p.t, p.x, p.y, cfg).log_density,
                log_sup_density_estimate({p.mu, 1.0}, p.t, p.x, p.y),
                gap * gap / p.t < 1.0 ? "(y-x)^2/t<1" : "(y-x)^2/t>=1"};
    }
    case EnvelopeId::SsRemark:
        return {ss_eval(p.t, p.x, 1.0, cfg).log_abs, log_ss_envelope(p.t, p.x), "all"};
    }
    throw ConfigError("unknown envelope");
}

std::vector<AuditPoint> expand(EnvelopeId id, const AuditGrid& g)
{
    auto need = [](const std::vector<double>& axis, const char* name) {
        if (axis.empty()) throw GridError(std::string("empty grid axis: ") + name);
    };
    const std::vector<double> one{1.0};
    const std::vector<double> zero{0.0};
    const bool uses_mu = id != EnvelopeId::SsRemark;
    const bool uses_r0 = id == EnvelopeId::Theorem9 || id == EnvelopeId::Theorem10;
    const bool uses_y = id == EnvelopeId::Theorem10 || id == EnvelopeId::Theorem11;
    if (uses_mu) need(g.mu, "mu");
    if (uses_r0) need(g.r0, "r0");
    if (uses_y) need(g.y, "y");
    need(g.t, "t");
    need(g.x, "x");

    std::vector<AuditPoint> pts;
    for (double mu : uses_mu ? g.mu : zero)
        for (double r0 : uses_r0 ? g.r0 : one)
            for (double t : g.t)
                for (double x : g.x)
                    for (double y : uses_y ? g.y : zero) {
                        AuditPoint p{mu, r0, t, x, y};
                        if (id == EnvelopeId::Theorem9 || id == EnvelopeId::Theorem10) {
                            p.x = x * r0;
                            p.y = y * r0;
                        } else if (id == EnvelopeId::Theorem11) {
                            p.x = x * y;
                        }
                        pts.push_back(p);
                    }
    return pts;
}

}  // namespace

AuditReport audit(EnvelopeId id, const AuditGrid& grid, const EvalConfig& cfg)
{
    validate_config(cfg);
    const auto pts = expand(id, grid);
    AuditReport rep;
    rep.id = id;
    rep.interval = envelope_interval(id);
    rep.rows.resize(pts.size());

    detail::parallel_for(pts.size(), [&](std::size_t i) {
        auto& row = rep.rows[i];
        row.point = pts[i];
        row.lo = rep.interval.lo;
        row.hi = rep.interval.hi;
        try {
            const auto e = evaluate(id, pts[i], cfg);
            row.region = e.region;
            row.log_ratio = e.log_exact - e.log_envelope;
            row.exact = std::exp(e.log_exact);
            row.envelope = std::exp(e.log_envelope);
            row.ratio = std::exp(row.log_ratio);
            row.pass = std::isfinite(row.log_ratio) && row.ratio > 0.0 && std::isfinite(row.ratio) &&
                       within(row.ratio, rep.interval);
        } catch (const DomainError& ex) {
            row.error = ex.what();
            row.domain_error = true;
            row.pass = false;
        } catch (const std::exception& ex) {
            row.error = ex.what();
            row.pass = false;
        }
    });

    std::map<std::string, RegionSummary> regions;
    rep.min_ratio = detail::kInf;
    rep.max_ratio = 0.0;
    for (const auto& row : rep.rows) {
        if (!row.error.empty()) {
            ++rep.n_error;
            if (row.domain_error) ++rep.n_domain_error;
            continue;
        }
        row.pass ? ++rep.n_pass : ++rep.n_fail;
        rep.min_ratio = std::min(rep.min_ratio, row.ratio);
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        auto& r = regions[row.region];
        if (r.count == 0) {
            r.region = row.region;
            r.min_ratio = row.ratio;
            r.max_ratio = row.ratio;
        }
        ++r.count;
        r.min_ratio = std::min(r.min_ratio, row.ratio);
        r.max_ratio = std::max(r.max_ratio, row.ratio);
    }
    for (auto& [name, r] : regions) rep.regions.push_back(r);
    return rep;
}

void write_audit_csv(std::ostream& os, const AuditReport& report)
{
    os << "envelope,mu,r0,t,x,y,exact,envelope_value,ratio,lo,hi,pass,region,error\n";
    const auto old_precision = os.precision(17);
    for (const auto& r : report.rows) {
        os << to_string(report.id) << ',' << r.point.mu << ',' << r.point.r0 << ',' << r.point.t
           << ',' << r.point.x << ',' << r.point.y << ',' << r.exact << ',' << r.envelope << ','
           << r.ratio << ',' << r.lo << ',' << r.hi << ',' << (r.pass ? 1 : 0) << ',' << r.region
           << ',' << '"' << r.error << '"' << '\n';
    }
    os.precision(old_precision);
}

}  // namespace besselmu
