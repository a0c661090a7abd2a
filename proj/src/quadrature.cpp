#include "besselmu/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "besselmu/model.hpp"

namespace besselmu {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
constexpr int kMaxDepth = 18;

struct Piece {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

// Bisection on top of the single-level rule, so the error estimate is
// rescaled consistently (see below) before it drives refinement.
Piece adapt(const std::function<double(double)>& f, double a, double b, double rel_tol, int depth)
{
    Piece p;
    p.value = Rule::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
    // The single-level error comes back for the rule mapped onto [-1, 1];
    // value and L1 carry the (b - a)/2 Jacobian, the error does not.
    p.error *= 0.5 * (b - a);
    if (p.error <= rel_tol * p.l1 || depth == 0 || !std::isfinite(p.value)) return p;
    const double m = 0.5 * (a + b);
    const auto left = adapt(f, a, m, rel_tol, depth - 1);
    const auto right = adapt(f, m, b, rel_tol, depth - 1);
    const Piece split{left.value + right.value, left.error + right.error, left.l1 + right.l1};
    // The estimate bottoms out near roundoff; once halving stops helping,
    // keep the better of the two.
    return split.error < p.error ? split : p;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, const std::vector<double>& points,
                           double rel_tol, double abs_tol)
{
    if (points.size() < 2) throw QuadratureError("integrate: need at least two points");
    QuadratureResult total;
    double l1_total = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double a = points[i];
        const double b = points[i + 1];
        if (!(b > a)) continue;
        const auto p = adapt(f, a, b, rel_tol, kMaxDepth);
        if (!std::isfinite(p.value)) throw QuadratureError("integrate: non-finite value");
        total.value += p.value;
        total.error += p.error;
        l1_total += p.l1;
    }
    // Panels are accepted relative to their own L1 norm, so the sum meets the
    // same relative standard; the factor 4 absorbs roundoff in the estimates.
    if (total.error > 4.0 * std::max(rel_tol * l1_total, abs_tol)) {
        std::ostringstream msg;
        msg << "integrate: error estimate " << total.error << " above tolerance (value "
            << total.value << ")";
        throw QuadratureError(msg.str());
    }
    return total;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol)
{
    return integrate(f, std::vector<double>{a, b}, rel_tol, abs_tol);
}

std::vector<double> peak_breaks(double lo, double hi, double center, double width)
{
    std::vector<double> pts{lo, hi};
    for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
        const double p = center + k * width;
        if (p > lo && p < hi) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace besselmu
