// Acceptance criteria 1-10. One PASS/FAIL line per criterion; exit status is
// the number of failures. Every tolerance and budget is a named constant.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "besselmu/bounds.hpp"
#include "besselmu/exit.hpp"
#include "besselmu/grid.hpp"
#include "besselmu/kernels.hpp"
#include "besselmu/lemmas.hpp"
#include "besselmu/quadrature.hpp"
#include "besselmu/simulate.hpp"
#include "besselmu/supremum.hpp"

using namespace besselmu;

namespace {

// Criterion 1
constexpr double kKilledCrossTol = 1e-10;
constexpr double kKilledBudget = 10.0;
// Criterion 2
constexpr double kExitCrossTol = 1e-10;
constexpr double kExitBudget = 5.0;
// Criterion 3
constexpr double kSurvivalIntegralTol = 1e-8;
// Criterion 4
constexpr double kClosureTol = 1e-7;
// Criterion 5
constexpr double kMeanExitRelTol = 1e-6;
constexpr double kMeanExitExample = 0.23106;
constexpr double kMeanExitExampleTol = 5e-6;
// Criterion 6
constexpr double kAuditBudget = 60.0;
// Criterion 7: observed sweep extremes, seed 20240607, 100 cases.
constexpr double kLockTol = 1e-9;
struct LemmaLock {
    int id;
    double lo, hi;
};
constexpr LemmaLock kLemmaLocks[] = {{2, 0.948540619653, 1.94867830124},
                                     {3, 0.569542621973, 1.3467554367},
                                     {4, 0.683162988959, 2.62254694667}};
// Criterion 8
constexpr double kSupFdRelTol = 1e-5;
constexpr double kSupFdFloor = 1e-10;
constexpr double kThm11MinRatio = 0.430184544768177;
constexpr double kThm11MaxRatio = 86.5559262073207;
constexpr double kThm11LockTol = 1e-9;
// Criterion 9
constexpr std::int64_t kMcPaths = 100'000;
constexpr double kMcDt = 1e-4;
constexpr double kMcHorizon = 2.0;
constexpr std::uint64_t kMcSeed = 7;
constexpr double kMcSeFactor = 3.0;
constexpr double kMcBudget = 120.0;
// Criterion 10
constexpr double kRescaleTol = 1e-10;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail, double seconds)
{
    std::printf("[%s] %2d %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

template <typename F>
double timed(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<ProcessParams> kCrossParams = {{1.0, 1.0}, {0.5, 2.0}, {4.0, 0.5}};

std::vector<double> fractions7()
{
    std::vector<double> v;
    for (int k = 1; k <= 7; ++k) v.push_back(k / 8.0);
    return v;
}

void criterion1()
{
    double worst = 0.0;
    int points = 0;
    const double secs = timed([&] {
        for (const auto& p : kCrossParams)
            for (double tr : logspace(1e-3, 10.0, 5))
                for (double xf : fractions7())
                    for (double yf : fractions7()) {
                        const double t = tr * p.r0 * p.r0;
                        const auto s = killed_density_spectral(p, t, xf * p.r0, yf * p.r0);
                        const auto i = killed_density_image(p, t, xf * p.r0, yf * p.r0);
                        worst = std::max(worst, std::abs(s.raw - i.raw));
                        ++points;
                    }
    });
    report(1, worst <= kKilledCrossTol && secs < kKilledBudget, "killed density spectral vs image",
           fmt("%.0f points, max |diff| %.3g (tol %.0e), budget %.0f s", points, worst, kKilledCrossTol,
               kKilledBudget),
           secs);
}

void criterion2()
{
    double worst = 0.0;
    int points = 0;
    const double secs = timed([&] {
        for (const auto& p : kCrossParams)
            for (double tr : logspace(1e-3, 10.0, 5))
                for (double xf : fractions7()) {
                    const double t = tr * p.r0 * p.r0;
                    const auto s = exit_density_spectral(p, t, xf * p.r0);
                    const auto i = exit_density_image(p, t, xf * p.r0);
                    worst = std::max(worst, std::abs(s.raw - i.raw));
                    ++points;
                }
    });
    report(2, worst <= kExitCrossTol && secs < kExitBudget, "exit density spectral vs image",
           fmt("%.0f points, max |diff| %.3g (tol %.0e), budget %.0f s", points, worst, kExitCrossTol, kExitBudget),
           secs);
}

void criterion3()
{
    double worst = 0.0;
    int points = 0;
    const double secs = timed([&] {
        const ProcessParams p{1.0, 1.0};
        for (double t : logspace(1e-2, 3.0, 5))
            for (double x : linspace(0.05, 0.95, 10)) {
                auto f = [&](double y) { return killed_density(p, t, x, y).value * speed_density(p.mu, y); };
                const auto q = integrate(f, peak_breaks(0.0, p.r0, x, std::sqrt(t)), 1e-12, 1e-300);
                worst = std::max(worst, std::abs(q.value - survival(p, t, x).raw));
                ++points;
            }
    });
    report(3, worst <= kSurvivalIntegralTol, "survival equals integrated killed density",
           fmt("%.0f points, max |diff| %.3g (tol %.0e)", points, worst, kSurvivalIntegralTol), secs);
}

void criterion4()
{
    double worst = 0.0;
    const double secs = timed([&] {
        for (const auto& p : kCrossParams)
            for (double xf : {0.1, 0.5, 0.9})
                for (double T : {0.5, 1.0, 5.0}) {
                    const double x = xf * p.r0;
                    auto g = [&](double t) { return exit_density(p, t, x).value; };
                    std::vector<double> pts = {0.0};
                    for (double b : {0.01, 0.05, 0.2, 1.0, 4.0})
                        if (b * p.r0 * p.r0 < T) pts.push_back(b * p.r0 * p.r0);
                    pts.push_back(T);
                    const double total = integrate(g, pts, 1e-12, 1e-15).value + survival(p, T, x).raw;
                    worst = std::max(worst, std::abs(total - 1.0));
                }
    });
    report(4, worst <= kClosureTol, "probability closure at T in {0.5, 1, 5}",
           fmt("27 cases, max |total - 1| %.3g (tol %.0e)", worst, kClosureTol), secs);
}

// First moment of the exit density: image below r0^2, spectral above.
double mean_by_quadrature(const ProcessParams& p, double x)
{
    const double r2 = p.r0 * p.r0;
    const double pi = std::numbers::pi;
    const double rate = 0.5 * (pi * pi / r2 + p.mu * p.mu);
    EvalConfig image, spectral;
    image.rep_policy = Representation::Image;
    spectral.rep_policy = Representation::Spectral;
    auto lo = [&](double t) { return t * exit_density(p, t, x, image).value; };
    auto hi = [&](double t) { return t * exit_density(p, t, x, spectral).value; };
    const double a = integrate(lo, {0.0, 0.01 * r2, 0.05 * r2, 0.25 * r2, r2}, 1e-12, 1e-16).value;
    const double T = std::max(4.0 * r2, 45.0 / rate);
    const double b = integrate(hi, {r2, 2.0 * r2, 4.0 * r2, T}, 1e-12, 1e-16).value;
    return a + b;
}

void criterion5()
{
    double worst = 0.0;
    int n = 0;
    double example = 0.0;
    const double secs = timed([&] {
        struct Geo {
            double r0, xf;
        };
        const Geo geos[] = {{1.0, 0.5}, {0.5, 0.1}, {2.0, 0.8}, {3.0, 0.0}};
        for (double mu : {0.0, 0.05, 0.5, 1.0, 4.0})
            for (const auto& g : geos) {
                const ProcessParams p{mu, g.r0};
                const double x = g.xf * g.r0;
                const double closed = mean_exit_time(p, x);
                worst = std::max(worst, std::abs(closed - mean_by_quadrature(p, x)) / closed);
                ++n;
            }
        example = mean_exit_time({1.0, 1.0}, 0.5);
    });
    const bool ok = worst <= kMeanExitRelTol && std::abs(example - kMeanExitExample) <= kMeanExitExampleTol;
    report(5, ok, "mean exit time closed form vs quadrature",
           fmt("%.0f triples, max rel diff %.3g (tol %.0e); (1,1,0.5) -> %.8f", n, worst, kMeanExitRelTol, example),
           secs);
}

void criterion6()
{
    std::string detail;
    bool ok = true;
    const double secs = timed([&] {
        for (auto id : {EnvelopeId::Theorem7, EnvelopeId::Theorem8, EnvelopeId::Corollary1, EnvelopeId::Theorem9,
                        EnvelopeId::Theorem10, EnvelopeId::SsRemark}) {
            const auto r = audit(id, default_grid(id));
            ok = ok && r.all_pass() && !r.rows.empty();
            detail += std::string(to_string(id)) +
                      fmt(" [%.4g, %.4g] in [%.4g, %.4g]", r.min_ratio, r.max_ratio, r.interval.lo, r.interval.hi) +
                      (r.all_pass() ? "" : " FAILED") + "; ";
        }
    });
    ok = ok && secs < kAuditBudget;
    report(6, ok, "envelope audits on default grids", detail + fmt("budget %.0f s", kAuditBudget), secs);
}

void criterion7()
{
    bool ok = true;
    std::string detail;
    const double secs = timed([&] {
        const auto s1 = lemma_sweep(1, 100, kDefaultSweepSeed);
        ok = s1.within_constants() && s1.cases.size() == 100;
        detail += fmt("L1 [%.6g, %.6g] in [1/12, 2]; ", s1.min_ratio, s1.max_ratio);
        for (const auto& l : kLemmaLocks) {
            const auto s = lemma_sweep(l.id, 100, kDefaultSweepSeed);
            bool finite = true;
            for (const auto& c : s.cases) finite = finite && c.ratio > 0.0 && std::isfinite(c.ratio);
            const bool locked = std::abs(s.min_ratio / l.lo - 1.0) <= kLockTol &&
                                std::abs(s.max_ratio / l.hi - 1.0) <= kLockTol;
            ok = ok && finite && locked;
            detail += fmt("L%.0f [%.12g, %.12g]", l.id, s.min_ratio, s.max_ratio) + (locked ? "; " : " UNLOCKED; ");
        }
    });
    report(7, ok, "lemma sweeps", detail + fmt("lock tol %.0e", kLockTol), secs);
}

void criterion8()
{
    double worst = 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool finite = true;
    const double secs = timed([&] {
        for (double t : {0.01, 0.1, 1.0, 10.0})
            for (double mu : {0.0, 0.5, 1.0, 4.0})
                for (double y : {0.5, 1.0, 2.0})
                    for (double xf : {0.1, 0.5, 0.9}) {
                        const ProcessParams p{mu, 1.0};
                        const auto s = sup_density(p, t, xf * y, y, {}, true);
                        if (s.density > kSupFdFloor)
                            worst = std::max(worst, std::abs(s.fd_density - s.density) / s.density);
                        const double r = std::exp(s.log_density - log_sup_density_estimate(p, t, xf * y, y));
                        finite = finite && std::isfinite(r) && r > 0.0;
                        lo = std::min(lo, r);
                        hi = std::max(hi, r);
                    }
    });
    const bool locked =
        std::abs(lo / kThm11MinRatio - 1.0) <= kThm11LockTol && std::abs(hi / kThm11MaxRatio - 1.0) <= kThm11LockTol;
    report(8, worst <= kSupFdRelTol && finite && locked, "sup density analytic vs finite difference",
           fmt("max rel diff %.3g (tol %.0e); envelope ratio [%.12g, %.12g]", worst, kSupFdRelTol, lo, hi) +
               (locked ? " locked" : " UNLOCKED"),
           secs);
}

void criterion9()
{
    SimulationSpec spec;
    spec.params = {1.0, 1.0};
    spec.x0 = 0.5;
    spec.horizon = kMcHorizon;
    spec.dt = kMcDt;
    spec.n_paths = kMcPaths;
    spec.seed = kMcSeed;
    spec.survival_times = {0.5};
    SimulationSummary s;
    const double secs = timed([&] { s = run(spec); });
    const double bias = 2.0 * std::sqrt(kMcDt);
    const auto& sv = s.survival[0].survival;
    const double exact_s = survival(spec.params, 0.5, spec.x0).value;
    const double exact_m = mean_exit_time(spec.params, spec.x0);
    const bool ok_s = std::abs(sv.value - exact_s) <= kMcSeFactor * sv.se + bias;
    const bool ok_m = std::abs(s.mean_exit.value - exact_m) <= kMcSeFactor * s.mean_exit.se + bias;
    report(9, ok_s && ok_m && secs < kMcBudget, "Monte Carlo survival and mean exit",
           fmt("S(0.5) %.5f +- %.5f vs %.5f; ", sv.value, sv.se, exact_s) +
               fmt("E tau %.5f +- %.5f vs %.5f; ", s.mean_exit.value, s.mean_exit.se, exact_m) +
               fmt("budget 3 SE + %.3f, %.0f censored", bias, double(s.n_censored)),
           secs);
}

void criterion10()
{
    double worst = 0.0;
    double printed_gap = 0.0;
    int n = 0;
    const double secs = timed([&] {
        for (double mu : {0.0, 0.5, 1.0, 2.0, 3.0})
            for (double r0 : {0.5, 2.0})
                for (double tr : {0.1, 1.5}) {
                    const ProcessParams p{mu, r0};
                    const double t = tr * r0 * r0, x = 0.6 * r0;
                    const auto g = gamma_rescale(p, t, x);
                    const double unit = exit_density(g.params, g.t, g.x).raw;
                    const double direct = exit_density(p, t, x).raw;
                    worst = std::max(worst, std::abs(g.factor * unit - direct) / direct);
                    if (mu > 0.0) printed_gap = std::max(printed_gap, std::abs(g.printed_factor * unit - direct) / direct);
                    ++n;
                }
    });
    report(10, worst <= kRescaleTol, "exit density rescaling identity",
           fmt("%.0f points, max rel diff %.3g (tol %.0e); factor as printed misses by up to %.3g", n, worst,
               kRescaleTol, printed_gap),
           secs);
}

}  // namespace

int main()
{
    const std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8,
                                                         criterion9, criterion10};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            std::printf("[FAIL] %2zu threw: %s\n", i + 1, e.what());
            ++failures;
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures;
}
