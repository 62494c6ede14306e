#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace distlab {

// One Aitken delta-squared pass: out[j] is built from (v[j], v[j+1], v[j+2]).
// Exact on sequences c + a*r^j.  Triples whose second difference is at noise
// level are passed through unchanged (the transform would divide by noise).
std::vector<double> aitken(std::span<const double> v);

struct GrowthFit {
    enum class Model { constant, logarithmic, power, exponential };
    Model model = Model::constant;
    double offset = 0.0;     // c in v = c + a*g(n)
    double amplitude = 0.0;  // a
    double rate = 0.0;       // power exponent / exponential rate; 0 for constant, slope for log
    double residual = 0.0;   // RMS of the fit on the supplied points
};

std::string to_string(GrowthFit::Model m);

// Least-squares fit of v against {c, c+a*log n, c+a*n^p, A*exp(g*n)}; returns
// the best model by residual with a complexity tie-break toward simpler ones.
GrowthFit fit_growth(std::span<const std::pair<double, double>> seq);

} // namespace distlab
