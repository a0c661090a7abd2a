#include "besselmu/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "besselmu/detail/parallel.hpp"
#include "besselmu/model.hpp"
#include "besselmu/quadrature.hpp"

namespace besselmu {

namespace {

constexpr double kQuadTol = 1e-12;
constexpr double kTruncation = 1e-16;

void require(bool ok, const char* what)
{
    if (!ok) throw DomainError(what);
}

/// 0, s, 4s, 16s, ... up to hi.
std::vector<double> geometric_breaks(double hi, double s)
{
    std::vector<double> pts{0.0};
    for (double p = s; p < hi; p *= 4.0) pts.push_back(p);
    pts.push_back(hi);
    return pts;
}

/// int_0^inf f, extended in doubling blocks past W0 until tail_bound(W) is
/// below kTruncation times the running value.
QuadratureResult semi_infinite(const std::function<double(double)>& f,
                               const std::function<double(double)>& tail_bound, double W0,
                               double scale)
{
    auto total = integrate(f, geometric_breaks(W0, std::min(scale, W0 / 4.0)), kQuadTol);
    double W = W0;
    for (int i = 0; i < 60 && tail_bound(W) > kTruncation * std::abs(total.value); ++i) {
        const auto part = integrate(f, W, 2.0 * W, kQuadTol);
        total.value += part.value;
        total.error += part.error;
        W *= 2.0;
    }
    if (tail_bound(W) > kTruncation * std::abs(total.value))
        throw QuadratureError("semi-infinite integral: tail bound not reached");
    return total;
}

LemmaCase finish(int id, double a, double b, double c, QuadratureResult q, double envelope,
                 double scale = 1.0)
{
    LemmaCase lc;
    lc.lemma_id = id;
    lc.a = a;
    lc.b = b;
    lc.c = c;
    lc.integral = q.value * scale;
    lc.integral_error = q.error * scale;
    lc.envelope = envelope * scale;
    lc.ratio = q.value / envelope;
    return lc;
}

}  // namespace

LemmaCase lemma1_check(double a, double b)
{
    require(std::isfinite(a) && std::isfinite(b) && a > 0.0 && a < b, "lemma 1 needs 0 < a < b");
    // Integrand and envelope both carry e^{b/2}; it is divided out.
    auto f = [b](double w) { return w / (1.0 + w) * std::exp(0.5 * (w - b)); };
    const auto q = integrate(f, a, b, kQuadTol);
    const double env = std::min(1.0, b) * std::min(1.0, b - a);
    return finish(1, a, b, 0.0, q, env, std::exp(0.5 * b));
}

LemmaCase lemma2_check(double a, double b, double c)
{
    require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && a > 0.0 && b > 0.0 &&
                c > 0.0,
            "lemma 2 needs a, b, c > 0");
    require(a * c > 1.0, "lemma 2 needs ac > 1");
    auto f = [=](double v) { return std::pow((a + b + v) / (b + v), 1.5) * std::exp(-c * v); };
    // The ratio factor is decreasing in v.
    auto tail = [=](double W) { return std::pow((a + b + W) / (b + W), 1.5) * std::exp(-c * W) / c; };
    const auto q = semi_infinite(f, tail, std::max(b, 8.0 / c), std::min(b, 1.0 / c));
    return finish(2, a, b, c, q, std::pow(a + b, 1.5) / (std::sqrt(b) * (1.0 + b * c)));
}

LemmaCase lemma3_check(double a, double b, double c)
{
    require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && b > 0.0 && a > b && c > b,
            "lemma 3 needs a, c > b > 0");
    require(b >= 1.0 || a < 2.0, "lemma 3 needs a < 2 when b < 1");
    auto f = [=](double w) {
        return std::pow(w + a, 2.5) / ((w + b) * (w + b) * (w + c)) * std::exp(-w);
    };
    // For w + a >= 5, (w+a)^{5/2} e^{-w/2} is decreasing and (w+b)^2 (w+c) >= w^3.
    auto tail = [=](double W) { return 2.0 * std::pow(W + a, 2.5) * std::exp(-W) / (W * W * W); };
    const auto q = semi_infinite(f, tail, std::max(8.0, 2.0 * c), std::min(b, 1.0));
    return finish(3, a, b, c, q, std::pow(a, 2.5) / (b * (b + 1.0) * c) + 1.0 / (1.0 + c));
}

LemmaCase lemma4_check(double a, double b, double c)
{
    require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && c > 0.0 && b > c && a > b,
            "lemma 4 needs a > b > c > 0");
    require(a < 1.0 || a <= 2.0 * b, "lemma 4 needs a <= 2b when a >= 1");
    // w = u^2 removes the 1/sqrt(w) singularity.
    auto f = [=](double u) {
        const double w = u * u;
        return 2.0 * std::pow(w + b, 1.5) * std::exp(-w) / (w + c);
    };
    const double top = std::sqrt(a);
    auto pts = peak_breaks(0.0, top, 0.0, std::sqrt(c));
    for (double p : {0.5, 1.0, 2.0, 4.0})
        if (p < top) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const auto q = integrate(f, pts, kQuadTol);
    return finish(4, a, b, c, q, std::min(1.0, a) + std::pow(b, 1.5) / std::sqrt(c * (1.0 + c)));
}

LemmaCase lemma_check(int lemma_id, double a, double b, double c)
{
    switch (lemma_id) {
    case 1: return lemma1_check(a, b);
    case 2: return lemma2_check(a, b, c);
    case 3: return lemma3_check(a, b, c);
    case 4: return lemma4_check(a, b, c);
    default: throw ConfigError("lemma id must be 1..4, got " + std::to_string(lemma_id));
    }
}

bool LemmaSweep::within_constants() const
{
    return std::all_of(cases.begin(), cases.end(), [](const LemmaCase& lc) {
        return lc.ratio >= kLemma1Lo * (1.0 - 1e-9) && lc.ratio <= kLemma1Hi * (1.0 + 1e-9);
    });
}

LemmaSweep lemma_sweep(int lemma_id, int n, std::uint64_t seed)
{
    if (lemma_id < 1 || lemma_id > 4)
        throw ConfigError("lemma id must be 1..4, got " + std::to_string(lemma_id));
    if (n < 1) throw ConfigError("sweep size must be >= 1");

    // Uniform doubles from the raw 64-bit stream, so draws are identical
    // across standard libraries.
    std::mt19937_64 rng(seed);
    auto u01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u01());
    };

    struct Args {
        double a, b, c;
    };
    std::vector<Args> args;
    args.reserve(n);
    while (static_cast<int>(args.size()) < n) {
        switch (lemma_id) {
        case 1: {
            const double b = log_uniform(1e-3, 60.0);
            const double a = b * (1e-6 + (1.0 - 2e-6) * u01());
            args.push_back({a, b, 0.0});
            break;
        }
        case 2: {
            const double a = log_uniform(1e-2, 1e2);
            const double b = log_uniform(1e-2, 1e2);
            const double c = log_uniform(1e-2, 1e2);
            if (a * c > 1.0) args.push_back({a, b, c});
            break;
        }
        case 3: {
            const double b = log_uniform(1e-2, 10.0);
            const double a = b < 1.0 ? b + (2.0 - b) * u01() : b * log_uniform(1.0, 100.0);
            const double c = b * log_uniform(1.0, 100.0);
            if (a > b && c > b) args.push_back({a, b, c});
            break;
        }
        case 4: {
            const double c = log_uniform(1e-3, 10.0);
            const double b = c * log_uniform(1.0, 30.0);
            const double a = (b < 0.5 && u01() < 0.5) ? b + (1.0 - b) * u01() : b * (1.0 + u01());
            if (a > b && b > c && (a < 1.0 || a <= 2.0 * b)) args.push_back({a, b, c});
            break;
        }
        }
    }

    LemmaSweep sweep;
    sweep.lemma_id = lemma_id;
    sweep.seed = seed;
    sweep.cases.resize(n);
    detail::parallel_for(args.size(), [&](std::size_t i) {
        sweep.cases[i] = lemma_check(lemma_id, args[i].a, args[i].b, args[i].c);
    });
    sweep.min_ratio = sweep.cases.front().ratio;
    sweep.max_ratio = sweep.cases.front().ratio;
    for (const auto& lc : sweep.cases) {
        sweep.min_ratio = std::min(sweep.min_ratio, lc.ratio);
        sweep.max_ratio = std::max(sweep.max_ratio, lc.ratio);
    }
    return sweep;
}

void write_lemma_csv(std::ostream& os, const LemmaSweep& sweep)
{
    os << "lemma,a,b,c,integral,integral_error,envelope,ratio\n";
    const auto old_precision = os.precision(17);
    for (const auto& lc : sweep.cases)
        os << lc.lemma_id << ',' << lc.a << ',' << lc.b << ',' << lc.c << ',' << lc.integral << ','
           << lc.integral_error << ',' << lc.envelope << ',' << lc.ratio << '\n';
    os.precision(old_precision);
}

}  // namespace besselmu
