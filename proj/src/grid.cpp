#include "besselmu/grid.hpp"

#include <charconv>
#include <cmath>

#include "besselmu/model.hpp"

namespace besselmu {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view s)
{
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw GridError("not a number: '" + std::string(s) + "'");
    return v;
}

int to_count(std::string_view s)
{
    s = trim(s);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || ptr != s.data() + s.size() || n < 1)
        throw GridError("point count must be a positive integer: '" + std::string(s) + "'");
    return n;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 1) throw GridError("linspace: n < 1");
    if (n == 1) return {lo};
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    v.back() = hi;
    return v;
}

std::vector<double> logspace(double lo, double hi, int n)
{
    if (!(lo > 0.0) || !(hi > 0.0)) throw GridError("logspace: bounds must be positive");
    auto v = linspace(std::log(lo), std::log(hi), n);
    for (auto& e : v) e = std::exp(e);
    v.front() = lo;
    if (n > 1) v.back() = hi;
    return v;
}

std::vector<double> parse_axis(std::string_view spec)
{
    spec = trim(spec);
    if (spec.empty()) throw GridError("empty axis");
    if (spec.starts_with("lin:") || spec.starts_with("log:")) {
        const auto parts = split(spec, ':');
        if (parts.size() != 4) throw GridError("expected kind:lo:hi:n, got '" + std::string(spec) + "'");
        const double lo = to_double(parts[1]);
        const double hi = to_double(parts[2]);
        const int n = to_count(parts[3]);
        return parts[0] == "lin" ? linspace(lo, hi, n) : logspace(lo, hi, n);
    }
    std::vector<double> out;
    for (auto item : split(spec, ',')) out.push_back(to_double(item));
    return out;
}

std::map<std::string, std::vector<double>> parse_grid(std::string_view spec)
{
    std::map<std::string, std::vector<double>> axes;
    spec = trim(spec);
    if (spec.empty() || spec == "default") return axes;
    for (auto part : split(spec, ';')) {
        part = trim(part);
        if (part.empty()) continue;
        const auto eq = part.find('=');
        if (eq == std::string_view::npos)
            throw GridError("expected name=axis, got '" + std::string(part) + "'");
        const std::string name(trim(part.substr(0, eq)));
        if (name.empty()) throw GridError("axis name missing in '" + std::string(part) + "'");
        if (axes.count(name)) throw GridError("axis '" + name + "' given twice");
        axes[name] = parse_axis(part.substr(eq + 1));
    }
    return axes;
}

}  // namespace besselmu
