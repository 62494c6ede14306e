#include "distlab/bump_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace distlab {
namespace {

constexpr int kMaxOrder = 16;

using Poly = std::vector<double>;

Poly differentiate(const Poly& p) {
    if (p.size() <= 1) return {0.0};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        d[i - 1] = p[i] * static_cast<double>(i);
    return d;
}

Poly shift_mul_x(const Poly& p, double c) {  // c * x * p(x)
    Poly r(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = c * p[i];
    return r;
}

Poly mul_u(const Poly& p) {  // (x^2 - 1) * p(x)
    Poly r(p.size() + 2, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i + 2] += p[i];
        r[i] -= p[i];
    }
    return r;
}

Poly add(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

double horner(const Poly& p, double x) {
    double v = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

} // namespace

BumpDerivatives::BumpDerivatives(int power) {
    if (power < 0)
        throw std::invalid_argument("BumpDerivatives: power must be nonnegative");
    Poly p(power + 1, 0.0);
    p[power] = 1.0;
    polys_.push_back(p);
    for (int k = 0; k < kMaxOrder; ++k) {
        const double q = 2.0 * k;
        const Poly& cur = polys_.back();
        Poly next = mul_u(mul_u(differentiate(cur)));           // P'(x^2-1)^2
        next = add(std::move(next), mul_u(shift_mul_x(cur, -2.0 * q)));  // -2q x P (x^2-1)
        next = add(std::move(next), shift_mul_x(cur, -2.0));             // -2 x P
        polys_.push_back(std::move(next));
    }
}

double BumpDerivatives::eval(int k, double x) const {
    if (k < 0 || k > max_order())
        throw std::invalid_argument("BumpDerivatives: derivative order out of range");
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = x * x - 1.0;  // in [-1, 0)
    const double expo = 1.0 / u - 2.0 * k * std::log(-u);
    if (expo < -700.0) return 0.0;
    return horner(polys_[k], x) * std::exp(expo);
}

} // namespace distlab
