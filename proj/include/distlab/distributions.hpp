#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "distlab/analytic.hpp"
#include "distlab/mollifier.hpp"

namespace distlab {

// k-th derivative of the delta distribution, localized at the origin.
struct DeltaDerivative {
    int order = 0;
};

// Continuous function vanishing outside [lo, hi].  The Hoelder exponent is
// metadata for the uniform-convergence tests, not verified at runtime.
struct CompactFunction {
    std::function<double(double)> f;
    double lo = 0.0;
    double hi = 0.0;
    std::optional<double> hoelder;
};

using Distribution = std::variant<DeltaDerivative, CompactFunction>;

// Smooth compactly supported test function with tabulated derivatives at 0.
class TestFunction {
public:
    static constexpr int kMaxDerivative = 8;

    // amplitude * B((x-center)/width) with B(u) = exp(1 + 1/(u^2-1)), B(0)=1.
    static TestFunction bump(std::string name, double center, double width,
                             double amplitude = 1.0);

    double operator()(double x) const { return psi_(x); }
    double derivative_at_zero(int k) const;
    double value_at_zero() const { return d0_[0]; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::function<double(double)> psi_;
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<double> d0_;
};

// Fixed suite: centered/wide/narrow/shifted bumps, including one with
// psi(0) = 0.
std::vector<TestFunction> standard_test_functions();

// A C-infinity regularized factor: pointwise values, exact derivatives when
// available, and a support bound when one exists (nullopt = whole line).
class SmoothFactor {
public:
    using Value = std::function<double(double)>;
    using Deriv = std::function<double(int, double)>;

    SmoothFactor(Value v, Deriv d, std::optional<std::pair<double, double>> support)
        : value_(std::move(v)), deriv_(std::move(d)), support_(support) {}

    double operator()(double x) const { return value_(x); }
    double derivative(int k, double x) const;
    const std::optional<std::pair<double, double>>& support() const { return support_; }

private:
    Value value_;
    Deriv deriv_;
    std::optional<std::pair<double, double>> support_;
};

// T * delta_n^(beta): delta^(k) -> n^{beta(k+1)} Phi^(k)(n^beta x);
// compact f -> int Phi(u) f(x - u n^{-beta}) du.
SmoothFactor mollify(const Distribution& t, const MollifierSpec& spec, double beta,
                     double n, double quad_tol = 1e-10);

// T_red(x, eps): delta^(k) -> k-th Poisson kernel derivative;
// compact f -> Poisson smoothing.
SmoothFactor analytic(const Distribution& t, Epsilon eps, double quad_tol = 1e-10);

// Exact action <T, g>: delta^(k) -> (-1)^k g^(k)(0); compact f -> int f g.
double pair(const Distribution& t, const SmoothFactor& g, double quad_tol = 1e-10);

// CSV with header "x,f" and monotone x rows; linear interpolation between
// samples, zero outside.
CompactFunction load_compact_csv(const std::string& path);

} // namespace distlab
