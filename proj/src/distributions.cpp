#include "distlab/distributions.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace distlab {

TestFunction TestFunction::bump(std::string name, double center, double width,
                                double amplitude) {
    if (!(width > 0)) throw std::invalid_argument("TestFunction: width must be > 0");
    TestFunction t;
    t.name_ = std::move(name);
    t.lo_ = center - width;
    t.hi_ = center + width;
    auto engine = std::make_shared<BumpDerivatives>(0);
    const double e = std::numbers::e;
    t.psi_ = [engine, center, width, amplitude, e](double x) {
        return amplitude * e * engine->eval(0, (x - center) / width);
    };
    // derivative k of B((x-c)/w) at 0 is w^{-k} B^(k)(-c/w)
    t.d0_.resize(kMaxDerivative + 1);
    const double u0 = -center / width;
    double wk = 1.0;
    for (int k = 0; k <= kMaxDerivative; ++k) {
        t.d0_[k] = amplitude * e * engine->eval(k, u0) * wk;
        wk /= width;
    }
    return t;
}

double TestFunction::derivative_at_zero(int k) const {
    if (k < 0 || k >= static_cast<int>(d0_.size()))
        throw MissingDerivative("TestFunction: derivative order " + std::to_string(k) +
                                " not tabulated");
    return d0_[k];
}

std::vector<TestFunction> standard_test_functions() {
    return {
        TestFunction::bump("bump_unit", 0.0, 1.0),
        TestFunction::bump("bump_wide", 0.0, 2.0),
        TestFunction::bump("bump_narrow", 0.0, 0.5),
        TestFunction::bump("bump_offcenter", 0.25, 1.0),
        TestFunction::bump("bump_shifted", 0.5, 0.25),  // psi(0) = 0
    };
}

double SmoothFactor::derivative(int k, double x) const {
    if (k == 0) return value_(x);
    if (!deriv_)
        throw MissingDerivative("SmoothFactor: derivatives unavailable");
    return deriv_(k, x);
}

SmoothFactor mollify(const Distribution& t, const MollifierSpec& spec, double beta,
                     double n, double quad_tol) {
    if (!(beta > 0) || !(n >= 1))
        throw std::invalid_argument("mollify: requires beta > 0 and n >= 1");
    const double s = std::pow(n, beta);
    if (const auto* d = std::get_if<DeltaDerivative>(&t)) {
        const int k0 = d->order;
        auto value = [spec, s, k0](double x) {
            return std::pow(s, k0 + 1) * spec.phi_derivative(k0, s * x);
        };
        auto deriv = [spec, s, k0](int k, double x) {
            return std::pow(s, k0 + k + 1) * spec.phi_derivative(k0 + k, s * x);
        };
        return SmoothFactor(value, deriv, std::make_pair(-1.0 / s, 1.0 / s));
    }
    const auto& c = std::get<CompactFunction>(t);
    auto f = c.f;
    auto value = [spec, f, s, quad_tol](double x) {
        QuadResult q = integrate(
            [&](double u) { return spec.phi(u) * f(x - u / s); }, -1.0, 1.0, quad_tol,
            std::vector<double>{0.0});
        return q.value;
    };
    auto deriv = [spec, f, s, quad_tol](int k, double x) {
        QuadResult q = integrate(
            [&](double u) { return spec.phi_derivative(k, u) * f(x - u / s); }, -1.0,
            1.0, quad_tol, std::vector<double>{0.0});
        return std::pow(s, k) * q.value;
    };
    return SmoothFactor(value, deriv, std::make_pair(c.lo - 1.0 / s, c.hi + 1.0 / s));
}

SmoothFactor analytic(const Distribution& t, Epsilon eps, double quad_tol) {
    if (const auto* d = std::get_if<DeltaDerivative>(&t)) {
        const int k0 = d->order;
        auto value = [k0, eps](double x) { return poisson_derivative(k0, x, eps); };
        auto deriv = [k0, eps](int k, double x) {
            return poisson_derivative(k0 + k, x, eps);
        };
        return SmoothFactor(value, deriv, std::nullopt);
    }
    const auto& c = std::get<CompactFunction>(t);
    auto f = c.f;
    const double lo = c.lo, hi = c.hi;
    auto value = [f, lo, hi, eps, quad_tol](double x) {
        return poisson_smoothing(f, lo, hi, x, eps, quad_tol);
    };
    auto deriv = [f, lo, hi, eps, quad_tol](int k, double x) {
        // int f(y) P^(k)(x - y, eps) dy with the kernel scale split out
        auto g = [&](double y) { return f(y) * poisson_derivative(k, x - y, eps); };
        std::vector<double> splits = geometric_splits(eps.value, lo - x, hi - x);
        for (double& s : splits) s += x;
        QuadResult q = integrate(g, lo, hi, quad_tol, splits);
        return q.value;
    };
    // the smoothed function keeps Lorentzian tails: no compact support
    return SmoothFactor(value, deriv, std::nullopt);
}

double pair(const Distribution& t, const SmoothFactor& g, double quad_tol) {
    if (const auto* d = std::get_if<DeltaDerivative>(&t)) {
        const int k = d->order;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return sign * g.derivative(k, 0.0);
    }
    const auto& c = std::get<CompactFunction>(t);
    QuadResult q = integrate([&](double x) { return c.f(x) * g(x); }, c.lo, c.hi,
                             quad_tol, std::vector<double>{0.0});
    return q.value;
}

CompactFunction load_compact_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_compact_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,f", 0) != 0)
        throw std::invalid_argument("load_compact_csv: expected header 'x,f'");
    auto xs = std::make_shared<std::vector<double>>();
    auto ys = std::make_shared<std::vector<double>>();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b))
            throw std::invalid_argument("load_compact_csv: malformed row: " + line);
        const double x = std::stod(a), y = std::stod(b);
        if (!xs->empty() && x <= xs->back())
            throw std::invalid_argument("load_compact_csv: x must be increasing");
        xs->push_back(x);
        ys->push_back(y);
    }
    if (xs->size() < 2)
        throw std::invalid_argument("load_compact_csv: need at least two rows");
    CompactFunction c;
    c.lo = xs->front();
    c.hi = xs->back();
    c.hoelder = 1.0;  // piecewise linear is Lipschitz
    c.f = [xs, ys](double x) {
        if (x <= xs->front() || x >= xs->back()) return 0.0;
        auto it = std::upper_bound(xs->begin(), xs->end(), x);
        const std::size_t i = static_cast<std::size_t>(it - xs->begin());
        const double t = (x - (*xs)[i - 1]) / ((*xs)[i] - (*xs)[i - 1]);
        return (1.0 - t) * (*ys)[i - 1] + t * (*ys)[i];
    };
    return c;
}

} // namespace distlab
