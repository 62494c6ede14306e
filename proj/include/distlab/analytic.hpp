#pragma once

#include <complex>
#include <functional>

#include "distlab/errors.hpp"
#include "distlab/quadrature.hpp"

namespace distlab {

// The half-width eps = n^{-alpha} of the analytic regularization.
struct Epsilon {
    double value;
    explicit Epsilon(double v) : value(v) {
        if (!(v > 0.0)) throw std::invalid_argument("Epsilon: value must be positive");
    }
    static Epsilon from_alpha_n(double alpha, double n) {
        return Epsilon(std::pow(n, -alpha));
    }
};

// (1/pi) eps / (x^2 + eps^2) -- the analytic regularization of delta.
double poisson(double x, Epsilon eps);

// k-th x-derivative of the Poisson kernel, i.e. the analytic regularization
// of delta^(k).  Closed form (k!/pi) Im( (-(x+i eps))^{-(k+1)} ).
double poisson_derivative(int k, double x, Epsilon eps);

// (1/2 pi i) int f(x)/(x-z) dx over [lo,hi]; holomorphic off the support.
std::complex<double> cauchy_transform(const std::function<double(double)>& f,
                                      double lo, double hi, std::complex<double> z,
                                      double tol = 1e-10);

// (1/pi) int f(y) eps/((y-x)^2+eps^2) dy computed through y = x + eps*tan(theta),
// which removes the kernel scale from the integrand.
double poisson_smoothing(const std::function<double(double)>& f, double lo, double hi,
                         double x, Epsilon eps, double tol = 1e-10);

} // namespace distlab
