#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace besselmu {

std::vector<double> linspace(double lo, double hi, int n);
/// Geometric spacing; lo and hi must be positive.
std::vector<double> logspace(double lo, double hi, int n);

/// One axis: "lin:lo:hi:n", "log:lo:hi:n", a comma list "a,b,c" or a single
/// value. Throws GridError.
std::vector<double> parse_axis(std::string_view spec);

/// "name=axis;name=axis;...". "default" or an empty string yields no axes.
/// Throws GridError on malformed input.
std::map<std::string, std::vector<double>> parse_grid(std::string_view spec);

}  // namespace besselmu
