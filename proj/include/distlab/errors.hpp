#pragma once

#include <stdexcept>
#include <string>

namespace distlab {

// Adaptive quadrature ran out of subdivision budget with the error
// estimate still above tolerance.  Carries the partial result so callers
// can decide whether it is usable.
class NoConvergence : public std::runtime_error {
public:
    NoConvergence(const std::string& what, double partial, double err)
        : std::runtime_error(what), partial_value(partial), error_estimate(err) {}
    double partial_value;
    double error_estimate;
};

// Moment constant A_{i,j} does not exist for the requested (m, i, j).
class DivergentConstant : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A pairing ⟨δ^(k), g⟩ asked for a derivative order g cannot supply.
class MissingDerivative : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Cauchy transform evaluated on the real axis inside the support.
class NonRealDomain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Analytic bound requested outside the regime it was derived for.
class InvalidRegime : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// N-fold product requested beyond the configured factor cap.
class UnsupportedCount : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace distlab
