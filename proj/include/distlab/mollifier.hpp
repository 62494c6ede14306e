#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "distlab/bump_algebra.hpp"
#include "distlab/errors.hpp"
#include "distlab/quadrature.hpp"

namespace distlab {

struct AConstant {
    int i = 0;
    int j = 0;
    double value = 0.0;
    double error_estimate = 0.0;
};

// Generator Phi(x) = x^m exp(1/(x^2-1)) / F on (-1,1), zero outside;
// F fixed so that the integral of Phi is 1.
class MollifierSpec {
public:
    // m must be even and >= 2 (odd m has vanishing normalization integral).
    static MollifierSpec make(int m, double quad_tol = 1e-10);

    int power() const { return m_; }
    double normalization() const { return f_; }
    double quad_tol() const { return quad_tol_; }

    double phi(double x) const;
    double phi_derivative(int k, double x) const;

    // n^beta * Phi(n^beta x)
    double delta_n(double beta, double n, double x) const;
    // k-th x-derivative of delta_n: n^{beta(k+1)} Phi^(k)(n^beta x)
    double delta_n_derivative(int k, double beta, double n, double x) const;

    // A_{i,j} = integral of Phi^i / t^j over [-1,1]; finite iff m*i >= j,
    // otherwise throws DivergentConstant.
    AConstant a_constant(int i, int j) const;

    // (1/2pi) integral of Phi(x) e^{ikx}; real and even.
    double phi_fourier(double k) const;

private:
    MollifierSpec(int m, double f, double quad_tol);
    int m_;
    double f_;
    double quad_tol_;
    std::shared_ptr<const BumpDerivatives> derivs_;
};

// Even function in k-space with support in [-1,1] and 2*pi*bump(0) = 1;
// the Fourier-side generator used by the field study.
struct FourierBumpSpec {
    std::function<double(double)> bump;
    double quad_tol = 1e-10;

    // c * exp(1/(k^2-1)) with c = e/(2pi)
    static FourierBumpSpec standard(double quad_tol = 1e-10);
    void validate() const;  // parity, support, normalization (sampled)
};

// Dense-grid cache with cubic interpolation, zero outside the window.
// Meant for rapidly decaying functions whose mass beyond the window is
// below the working tolerance.
class CachedFunction {
public:
    CachedFunction(std::vector<double> table, double halfwidth);
    double operator()(double x) const;
    double halfwidth() const { return halfwidth_; }

private:
    double halfwidth_;
    double step_;
    std::vector<double> table_;
};

// Pointwise Fourier anti-transform Phi(x) = 2 * int_0^1 bump(k) cos(kx) dk.
double fourier_antitransform(const FourierBumpSpec& bump, double x);

// Same anti-transform tabulated on [-halfwidth, halfwidth] for bulk use
// inside nested integrals.  The default window is wide enough that the
// truncated tail of the standard bump sits below 1e-10.
CachedFunction mollifier_from_fourier(const FourierBumpSpec& bump,
                                      double cache_halfwidth = 256.0,
                                      int cache_points = 16385);

struct DiricheletReport {
    bool unit_mass = false;       // i)  int_{-A}^{A} delta_k -> 1
    bool vanishing_tails = false; // ii) tails against integrable f -> 0
    bool kernel_bound = false;    // iii) |delta_k(t)| <= C1/|t| + C2 uniformly
    double C1 = 0.0;
    double C2 = 0.0;
    std::vector<double> mass_errors;   // per schedule entry
    std::vector<double> tail_maxima;   // per schedule entry
    std::vector<double> c1_per_n;      // fitted per entry (growth means failure)
    bool all() const { return unit_mass && vanishing_tails && kernel_bound; }
};

// Numeric check of the Dirichelet-family conditions for a family delta(n, x)
// along the given n schedule.
DiricheletReport dirichelet_check(const std::function<double(double, double)>& family,
                                  std::span<const double> schedule);

bool positivity_check(const MollifierSpec& spec);
bool positivity_check(const std::function<double(double)>& f, double lo, double hi);

} // namespace distlab
