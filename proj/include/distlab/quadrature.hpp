#pragma once

#include <functional>
#include <span>
#include <vector>

#include "distlab/errors.hpp"

namespace distlab {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

struct QuadOptions {
    double tol = 1e-10;            // absolute target for the whole interval
    long max_intervals = 100000;   // subdivision budget; exceeding it throws NoConvergence
};

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7/15 on [a,b].  Interior `splits` seed the initial
// partition; callers declare them wherever the integrand has a singular point,
// a kink, or structure on a scale far below the interval length (an
// undeclared narrow spike can otherwise pass unseen between the nodes of the
// first few panels).
QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts = {},
                     std::span<const double> splits = {});

QuadResult integrate(const RealFn& f, double a, double b, double tol,
                     std::span<const double> splits = {});

enum class DecayHint { exponential, algebraic };

// Integral over [a, inf).  The decay hint selects the variable transform:
// x = a - log(1-u) for exponential tails, x = a + u/(1-u) for algebraic ones.
QuadResult integrate_semi_infinite(const RealFn& f, double a, double tol,
                                   DecayHint hint, long max_intervals = 100000);

// Geometric ladder of points scale, 10*scale, ... clipped to (lo, hi), plus 0
// when it lies inside.  The standard split set for integrands concentrated
// around the origin at a known scale.
std::vector<double> geometric_splits(double scale, double lo, double hi, double factor = 10.0);

} // namespace distlab
