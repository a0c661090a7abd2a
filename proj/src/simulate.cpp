#include "besselmu/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <random>

#include "besselmu/detail/parallel.hpp"
#include "besselmu/kernels.hpp"
#include "besselmu/quadrature.hpp"

namespace besselmu {

namespace {

std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct PathRecord {
    std::int64_t exit_step = -1;  ///< first grid index with |X| >= r0, -1 if none
    double sup = 0.0;
    double x_marginal = 0.0;
};

struct Grid {
    std::int64_t n_steps = 0;
    std::int64_t marginal_step = -1;
    bool full_paths = false;
};

std::int64_t step_index(double t, double dt)
{
    return static_cast<std::int64_t>(std::floor(t / dt + 1e-9));
}

Grid make_grid(const SimulationSpec& spec)
{
    Grid g;
    g.n_steps = static_cast<std::int64_t>(std::ceil(spec.horizon / spec.dt - 1e-9));
    if (spec.marginal) g.marginal_step = step_index(spec.marginal->t, spec.dt);
    g.full_paths = spec.sup_bins > 0 || (spec.marginal && !spec.marginal->killed);
    return g;
}

PathRecord simulate_path(const SimulationSpec& spec, const Grid& g, std::int64_t i)
{
    std::mt19937_64 rng(splitmix64(splitmix64(spec.seed) ^ static_cast<std::uint64_t>(i)));
    std::normal_distribution<double> normal;
    const double mu = spec.params.mu;
    const double r0 = spec.params.r0;
    const double sdt = std::sqrt(spec.dt);
    const double drift = mu * spec.dt;
    const double r0_sq = r0 * r0;

    double p[3] = {0.0, 0.0, 0.0};
    if (spec.x0 > 0.0) {
        // Direction cosine w along e3 from the vMF density ~ e^{kappa w} on [-1, 1].
        const double kappa = mu * spec.x0;
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double w = kappa > 0.0
                             ? 1.0 + std::log1p((1.0 - u) * std::expm1(-2.0 * kappa)) / kappa
                             : 2.0 * u - 1.0;
        const double phi = 2.0 * std::numbers::pi * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
        const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
        p[0] = spec.x0 * s * std::cos(phi);
        p[1] = spec.x0 * s * std::sin(phi);
        p[2] = spec.x0 * w;
    }

    PathRecord rec;
    double sup_sq = spec.x0 * spec.x0;
    if (g.marginal_step == 0) rec.x_marginal = spec.x0;
    for (std::int64_t k = 1; k <= g.n_steps; ++k) {
        p[0] += sdt * normal(rng);
        p[1] += sdt * normal(rng);
        p[2] += sdt * normal(rng) + drift;
        const double r_sq = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        sup_sq = std::max(sup_sq, r_sq);
        if (k == g.marginal_step) rec.x_marginal = std::sqrt(r_sq);
        if (rec.exit_step < 0 && r_sq >= r0_sq) {
            rec.exit_step = k;
            if (!g.full_paths) break;
        }
    }
    rec.sup = std::sqrt(sup_sq);
    return rec;
}

std::vector<PathRecord> simulate_paths(const SimulationSpec& spec, const Grid& g)
{
    std::vector<PathRecord> recs(static_cast<std::size_t>(spec.n_paths));
    const unsigned workers = spec.threads > 0 ? spec.threads : detail::worker_count();
    // Blocks of paths keep the scheduling overhead small; the result does not
    // depend on which worker runs which block.
    constexpr std::int64_t kBlock = 256;
    const std::int64_t n_blocks = (spec.n_paths + kBlock - 1) / kBlock;
    detail::parallel_for(
        static_cast<std::size_t>(n_blocks),
        [&](std::size_t b) {
            const std::int64_t lo = static_cast<std::int64_t>(b) * kBlock;
            const std::int64_t hi = std::min(spec.n_paths, lo + kBlock);
            for (std::int64_t i = lo; i < hi; ++i) recs[i] = simulate_path(spec, g, i);
        },
        workers);
    return recs;
}

bool alive_at(const PathRecord& r, std::int64_t step)
{
    return r.exit_step < 0 || r.exit_step > step;
}

Estimate proportion(std::int64_t count, std::int64_t n)
{
    const double p = static_cast<double>(count) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

Histogram make_hist(double lo, double hi, int bins)
{
    Histogram h;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * b / bins;
    h.counts.assign(bins, 0);
    return h;
}

void add_to_hist(Histogram& h, double v)
{
    const double lo = h.edges.front();
    const double hi = h.edges.back();
    // Last bin is closed so an exit on the final grid step is counted.
    if (!(v >= lo && v <= hi)) return;
    const auto bins = static_cast<int>(h.counts.size());
    const int b = std::min(bins - 1, static_cast<int>((v - lo) / (hi - lo) * bins));
    ++h.counts[b];
}

void finish_hist(Histogram& h, std::int64_t n)
{
    const auto bins = h.counts.size();
    h.density.resize(bins);
    h.se.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double width = h.edges[b + 1] - h.edges[b];
        const auto e = proportion(h.counts[b], n);
        h.density[b] = e.value / width;
        h.se[b] = e.se / width;
    }
}

}  // namespace

void validate_spec(const SimulationSpec& spec)
{
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    const auto& p = spec.params;
    if (!std::isfinite(p.mu) || p.mu < 0.0) fail("mu < 0");
    if (!std::isfinite(p.r0) || p.r0 <= 0.0) fail("r0 <= 0");
    if (!std::isfinite(spec.x0) || spec.x0 < 0.0) fail("x0 < 0");
    if (spec.x0 >= p.r0) fail("x0 >= r0: the path would start outside the interval");
    if (!std::isfinite(spec.horizon) || spec.horizon <= 0.0) fail("horizon <= 0");
    if (!std::isfinite(spec.dt) || spec.dt <= 0.0) fail("dt <= 0");
    if (spec.dt > spec.horizon) fail("dt > horizon");
    if (spec.n_paths < 1) fail("n_paths < 1");
    for (double t : spec.survival_times)
        if (!(t > 0.0 && t <= spec.horizon)) fail("survival time outside (0, horizon]");
    if (spec.exit_time_bins < 0 || spec.sup_bins < 0) fail("negative bin count");
    if (spec.sup_bins > 0 && spec.sup_max != 0.0 && !(spec.sup_max > spec.x0))
        fail("sup_max must exceed x0");
    if (spec.marginal) {
        const auto& m = *spec.marginal;
        if (!(m.t > 0.0 && m.t <= spec.horizon)) fail("marginal t outside (0, horizon]");
        if (m.bins < 1) fail("marginal bins < 1");
        if (!(m.y_max > 0.0)) fail("marginal y_max <= 0");
    }
}

SimulationSummary run(const SimulationSpec& spec)
{
    validate_spec(spec);
    const auto start = std::chrono::steady_clock::now();
    const Grid g = make_grid(spec);
    const auto recs = simulate_paths(spec, g);
    const std::int64_t n = spec.n_paths;

    SimulationSummary s;
    s.spec = spec;
    s.n_steps = g.n_steps;
    s.n_effective = n;

    for (double t : spec.survival_times) {
        const auto k = step_index(t, spec.dt);
        std::int64_t alive = 0;
        for (const auto& r : recs) alive += alive_at(r, k) ? 1 : 0;
        s.survival.push_back({t, proportion(alive, n)});
    }

    // Welford in path order.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& r = recs[i];
        const double tau = r.exit_step < 0 ? spec.horizon : r.exit_step * spec.dt;
        if (r.exit_step < 0) ++s.n_censored;
        const double d = tau - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (tau - mean);
    }
    s.mean_exit.value = mean;
    s.mean_exit.se = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;

    if (spec.exit_time_bins > 0) {
        auto h = make_hist(0.0, spec.horizon, spec.exit_time_bins);
        for (const auto& r : recs)
            if (r.exit_step >= 0) add_to_hist(h, r.exit_step * spec.dt);
        finish_hist(h, n);
        s.exit_time_hist = std::move(h);
    }
    if (spec.sup_bins > 0) {
        const double top = spec.sup_max > 0.0 ? spec.sup_max : 2.0 * spec.params.r0;
        auto h = make_hist(spec.x0, top, spec.sup_bins);
        for (const auto& r : recs) add_to_hist(h, r.sup);
        finish_hist(h, n);
        s.sup_hist = std::move(h);
    }
    if (spec.marginal) {
        const auto& m = *spec.marginal;
        MarginalSummary ms;
        ms.spec = m;
        ms.hist = make_hist(0.0, m.y_max, m.bins);
        double r2_mean = 0.0;
        double r2_m2 = 0.0;
        for (const auto& r : recs) {
            if (m.killed && !alive_at(r, g.marginal_step)) continue;
            ++ms.alive;
            add_to_hist(ms.hist, r.x_marginal);
            const double v = r.x_marginal * r.x_marginal / m.t;
            const double d = v - r2_mean;
            r2_mean += d / static_cast<double>(ms.alive);
            r2_m2 += d * (v - r2_mean);
        }
        finish_hist(ms.hist, n);
        ms.r2_over_t.value = r2_mean;
        ms.r2_over_t.se =
            ms.alive > 1 ? std::sqrt(r2_m2 / static_cast<double>(ms.alive - 1) / ms.alive) : 0.0;
        s.marginal = std::move(ms);
    }
    s.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

MarginalCheck marginal_check(const SimulationSpec& spec, double t, double lo, double hi, bool killed)
{
    if (!(lo >= 0.0 && hi > lo)) throw ConfigError("band must satisfy 0 <= lo < hi");
    if (killed && hi > spec.params.r0) throw ConfigError("killed band must lie inside (0, r0)");
    SimulationSpec s = spec;
    s.horizon = t;
    s.survival_times.clear();
    s.exit_time_bins = 0;
    s.sup_bins = 0;
    s.marginal = MarginalSpec{t, 1, std::max(hi, 1.0), killed};
    validate_spec(s);
    const Grid g = make_grid(s);
    const auto recs = simulate_paths(s, g);

    std::int64_t count = 0;
    for (const auto& r : recs) {
        if (killed && !alive_at(r, g.marginal_step)) continue;
        if (r.x_marginal > lo && r.x_marginal < hi) ++count;
    }
    MarginalCheck out;
    const auto e = proportion(count, s.n_paths);
    out.empirical = e.value;
    out.se = e.se;

    const ProcessParams& p = spec.params;
    auto f = [&](double y) {
        if (y <= 0.0) return 0.0;
        const double dens =
            killed ? killed_density(p, t, spec.x0, y).value : free_density(p, t, spec.x0, y).value;
        return dens * speed_density(p.mu, y);
    };
    out.analytic = integrate(f, peak_breaks(lo, hi, spec.x0, std::sqrt(t)), 1e-10).value;
    out.z = out.se > 0.0 ? (out.empirical - out.analytic) / out.se : 0.0;
    return out;
}

namespace {

nlohmann::json hist_json(const Histogram& h)
{
    return {{"edges", h.edges}, {"counts", h.counts}, {"density", h.density}, {"se", h.se}};
}

}  // namespace

std::string summary_json(const SimulationSummary& s)
{
    using nlohmann::json;
    json j;
    const auto& sp = s.spec;
    j["spec"] = {{"mu", sp.params.mu}, {"r0", sp.params.r0}, {"x0", sp.x0},
                 {"horizon", sp.horizon}, {"dt", sp.dt}, {"n_paths", sp.n_paths},
                 {"seed", sp.seed}};
    j["n_steps"] = s.n_steps;
    j["n_effective"] = s.n_effective;
    j["survival"] = json::array();
    for (const auto& e : s.survival)
        j["survival"].push_back({{"t", e.t}, {"value", e.survival.value}, {"se", e.survival.se}});
    j["mean_exit"] = {{"value", s.mean_exit.value}, {"se", s.mean_exit.se},
                      {"n_censored", s.n_censored}};
    if (s.exit_time_hist) j["exit_time_hist"] = hist_json(*s.exit_time_hist);
    if (s.sup_hist) j["sup_hist"] = hist_json(*s.sup_hist);
    if (s.marginal) {
        const auto& m = *s.marginal;
        j["marginal"] = {{"t", m.spec.t},
                         {"killed", m.spec.killed},
                         {"alive", m.alive},
                         {"r2_over_t", {{"value", m.r2_over_t.value}, {"se", m.r2_over_t.se}}},
                         {"hist", hist_json(m.hist)}};
    }
    j["wall_seconds"] = s.wall_seconds;
    return j.dump(2);
}

void write_summary_csv(std::ostream& os, const SimulationSummary& s)
{
    const auto old_precision = os.precision(17);
    os << "estimator,key,value,se\n";
    for (const auto& e : s.survival)
        os << "survival," << e.t << ',' << e.survival.value << ',' << e.survival.se << '\n';
    os << "mean_exit,," << s.mean_exit.value << ',' << s.mean_exit.se << '\n';
    os << "n_censored,," << s.n_censored << ",0\n";
    auto hist_rows = [&](const char* name, const Histogram& h) {
        for (std::size_t b = 0; b < h.counts.size(); ++b)
            os << name << ',' << 0.5 * (h.edges[b] + h.edges[b + 1]) << ',' << h.density[b] << ','
               << h.se[b] << '\n';
    };
    if (s.exit_time_hist) hist_rows("exit_time_density", *s.exit_time_hist);
    if (s.sup_hist) hist_rows("sup_density", *s.sup_hist);
    if (s.marginal) {
        hist_rows("marginal_density", s.marginal->hist);
        os << "r2_over_t,," << s.marginal->r2_over_t.value << ',' << s.marginal->r2_over_t.se
           << '\n';
    }
    os.precision(old_precision);
}

}  // namespace besselmu
