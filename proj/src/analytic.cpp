#include "distlab/analytic.hpp"

#include <cmath>
#include <numbers>

namespace distlab {

namespace {
constexpr double kPi = std::numbers::pi;

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}
} // namespace

double poisson(double x, Epsilon eps) {
    const double e = eps.value;
    return (1.0 / kPi) * e / (x * x + e * e);
}

double poisson_derivative(int k, double x, Epsilon eps) {
    if (k < 0) throw std::invalid_argument("poisson_derivative: k must be >= 0");
    if (k == 0) return poisson(x, eps);
    if (x == 0.0 && k % 2 == 1) return 0.0;  // odd derivative of an even kernel
    const double e = eps.value;
    // (k!/pi) Im( (-(x+i eps))^{-(k+1)} ) evaluated in polar form.  The
    // angle must be taken against |x| -- for x >> eps the argument sits next
    // to pi, where atan2's absolute rounding would drown the O(eps/x)
    // signal -- with the kernel parity (-1)^k restoring the sign for x < 0.
    const double ax = std::abs(x);
    const double r = std::hypot(ax, e);
    const double theta = std::atan2(e, ax);  // in (0, pi/2], full accuracy
    const double mag = std::pow(r, -(k + 1.0));
    double v = (factorial(k) / kPi) * mag * std::sin((k + 1.0) * theta);
    if (k % 2 == 1) v = -v;               // from Im(z^{-q}) = -r^{-q} sin(q theta)
    if (x < 0.0 && k % 2 == 1) v = -v;    // kernel parity
    return v;
}

std::complex<double> cauchy_transform(const std::function<double(double)>& f,
                                      double lo, double hi, std::complex<double> z,
                                      double tol) {
    if (z.imag() == 0.0 && z.real() >= lo && z.real() <= hi)
        throw NonRealDomain("cauchy_transform: z on the real axis inside supp f");
    auto re = [&](double x) {
        const std::complex<double> v = f(x) / (x - z);
        return v.real();
    };
    auto im = [&](double x) {
        const std::complex<double> v = f(x) / (x - z);
        return v.imag();
    };
    // refine near the projection of the pole when z hugs the support
    std::vector<double> splits;
    if (std::abs(z.imag()) < (hi - lo) && z.real() > lo && z.real() < hi) {
        splits = geometric_splits(std::max(std::abs(z.imag()), 1e-300), lo - z.real(),
                                  hi - z.real());
        for (double& s : splits) s += z.real();
    }
    QuadResult qr = integrate(re, lo, hi, tol, splits);
    QuadResult qi = integrate(im, lo, hi, tol, splits);
    const std::complex<double> itwopi(0.0, 2.0 * kPi);
    return std::complex<double>(qr.value, qi.value) / itwopi;
}

double poisson_smoothing(const std::function<double(double)>& f, double lo, double hi,
                         double x, Epsilon eps, double tol) {
    const double e = eps.value;
    const double t0 = std::atan((lo - x) / e);
    const double t1 = std::atan((hi - x) / e);
    if (!(t0 < t1)) return 0.0;
    QuadResult q = integrate(
        [&f, x, e](double theta) { return f(x + e * std::tan(theta)); }, t0, t1, tol);
    return q.value / kPi;
}

} // namespace distlab
