#include "distlab/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace distlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

MollifierSpec::MollifierSpec(int m, double f, double quad_tol)
    : m_(m), f_(f), quad_tol_(quad_tol),
      derivs_(std::make_shared<BumpDerivatives>(m)) {}

MollifierSpec MollifierSpec::make(int m, double quad_tol) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument(
            "MollifierSpec: m must be even and >= 2 (odd m has zero mass)");
    if (!(quad_tol > 0))
        throw std::invalid_argument("MollifierSpec: quad_tol must be positive");
    BumpDerivatives raw(m);
    const double split[] = {0.0};
    QuadResult f = integrate([&raw](double x) { return raw.eval(0, x); }, -1.0, 1.0,
                             quad_tol, split);
    return MollifierSpec(m, f.value, quad_tol);
}

double MollifierSpec::phi(double x) const { return derivs_->eval(0, x) / f_; }

double MollifierSpec::phi_derivative(int k, double x) const {
    return derivs_->eval(k, x) / f_;
}

double MollifierSpec::delta_n(double beta, double n, double x) const {
    const double s = std::pow(n, beta);
    return s * phi(s * x);
}

double MollifierSpec::delta_n_derivative(int k, double beta, double n, double x) const {
    const double s = std::pow(n, beta);
    return std::pow(s, k + 1) * phi_derivative(k, s * x);
}

AConstant MollifierSpec::a_constant(int i, int j) const {
    if (i < 1 || j < 1)
        throw std::invalid_argument("a_constant: i, j must be positive");
    if (static_cast<long>(m_) * i < j)
        throw DivergentConstant("A_{" + std::to_string(i) + "," + std::to_string(j) +
                                "} diverges for m=" + std::to_string(m_) +
                                " (needs m*i >= j)");
    // Integrand written as t^{m*i-j} (E(t)/F)^i so the origin is regular.
    const int p = m_ * i - j;
    const double f = f_;
    auto integrand = [p, i, f](double t) {
        if (std::abs(t) >= 1.0) return 0.0;
        const double e = std::exp(1.0 / (t * t - 1.0)) / f;
        double ei = 1.0;
        for (int r = 0; r < i; ++r) ei *= e;
        return std::pow(t, p) * ei;
    };
    const double split[] = {0.0};
    QuadResult q = integrate(integrand, -1.0, 1.0, quad_tol_, split);
    return {i, j, q.value, q.error_estimate};
}

double MollifierSpec::phi_fourier(double k) const {
    // Phi even: (1/2pi) int Phi e^{ikx} = (1/pi) int_0^1 Phi cos(kx)
    QuadResult q = integrate(
        [this, k](double x) { return phi(x) * std::cos(k * x); }, 0.0, 1.0,
        std::min(quad_tol_, 1e-12));
    return q.value / kPi;
}

FourierBumpSpec FourierBumpSpec::standard(double quad_tol) {
    const double c = std::numbers::e / (2.0 * kPi);
    FourierBumpSpec spec;
    spec.bump = [c](double k) {
        if (std::abs(k) >= 1.0) return 0.0;
        return c * std::exp(1.0 / (k * k - 1.0));
    };
    spec.quad_tol = quad_tol;
    return spec;
}

void FourierBumpSpec::validate() const {
    if (!bump) throw std::invalid_argument("FourierBumpSpec: empty bump");
    if (std::abs(2.0 * kPi * bump(0.0) - 1.0) > std::max(quad_tol, 1e-9))
        throw std::invalid_argument("FourierBumpSpec: 2*pi*bump(0) != 1");
    for (double k = 0.05; k < 1.0; k += 0.05)
        if (std::abs(bump(k) - bump(-k)) > 1e-12)
            throw std::invalid_argument("FourierBumpSpec: bump is not even");
    for (double k = 1.0; k < 3.0; k += 0.25)
        if (bump(k) != 0.0 || bump(-k) != 0.0)
            throw std::invalid_argument("FourierBumpSpec: support exceeds [-1,1]");
}

CachedFunction::CachedFunction(std::vector<double> table, double halfwidth)
    : halfwidth_(halfwidth), table_(std::move(table)) {
    if (table_.size() < 4) throw std::invalid_argument("CachedFunction: too few points");
    step_ = 2.0 * halfwidth_ / (static_cast<double>(table_.size()) - 1.0);
}

double CachedFunction::operator()(double x) const {
    if (std::abs(x) >= halfwidth_ - 2.0 * step_) return 0.0;
    const double u = (x + halfwidth_) / step_;
    const auto i = static_cast<long>(std::floor(u));
    const double t = u - static_cast<double>(i);
    // Catmull-Rom through the four surrounding samples
    const double p0 = table_[i - 1], p1 = table_[i], p2 = table_[i + 1],
                 p3 = table_[i + 2];
    return p1 + 0.5 * t * (p2 - p0 +
                           t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                t * (3.0 * (p1 - p2) + p3 - p0)));
}

double fourier_antitransform(const FourierBumpSpec& spec, double x) {
    QuadResult q = integrate(
        [&spec, x](double k) { return spec.bump(k) * std::cos(k * x); }, 0.0, 1.0,
        spec.quad_tol);
    return 2.0 * q.value;
}

CachedFunction mollifier_from_fourier(const FourierBumpSpec& spec,
                                      double cache_halfwidth, int cache_points) {
    spec.validate();
    // Composite Simpson in k with a rotation recurrence for cos(k_j x):
    // accurate as long as the k step stays well inside one oscillation
    // period at the largest |x| in the table.
    const int panels = 8192;
    const double h = 1.0 / panels;
    std::vector<double> wb(panels + 1);
    for (int j = 0; j <= panels; ++j) {
        double w = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        wb[j] = w * spec.bump(j * h);
    }
    std::vector<double> table(cache_points);
    const double step = 2.0 * cache_halfwidth / (cache_points - 1);
    for (int i = 0; i < cache_points; ++i) {
        const double x = -cache_halfwidth + i * step;
        const double c = std::cos(h * x), s = std::sin(h * x);
        double zr = 1.0, zi = 0.0, sum = 0.0;
        for (int j = 0; j <= panels; ++j) {
            sum += wb[j] * zr;
            const double nr = zr * c - zi * s;
            zi = zr * s + zi * c;
            zr = nr;
        }
        table[i] = 2.0 * sum * h / 3.0;
    }
    return CachedFunction(std::move(table), cache_halfwidth);
}

DiricheletReport dirichelet_check(const std::function<double(double, double)>& family,
                                  std::span<const double> schedule) {
    DiricheletReport rep;
    if (schedule.empty()) return rep;
    const double A = 2.0;      // i): fixed window
    const double gamma = 0.5;  // ii): excluded neighborhood of the origin
    const double far = 80.0;   // practical infinity for the tail integrals

    // Integrable test functions for condition ii)
    std::vector<std::function<double(double)>> fs = {
        [](double x) { return 1.0 / (1.0 + x * x); },
        [](double x) { return std::exp(-std::abs(x)); },
        [](double x) { return std::exp(-(x - 1.0) * (x - 1.0)); }};

    for (double n : schedule) {
        auto dn = [&family, n](double x) { return family(n, x); };
        // i) mass over [-A, A]; split near the origin where the family peaks
        std::vector<double> sp = geometric_splits(1e-6, -A, A);
        QuadResult mass = integrate(dn, -A, A, 1e-9, sp);
        rep.mass_errors.push_back(std::abs(mass.value - 1.0));

        // ii) tails against each f
        double worst = 0.0;
        for (const auto& f : fs) {
            auto g = [&dn, &f](double x) { return dn(x) * f(x); };
            QuadResult t1 = integrate(g, gamma, far, 1e-10);
            QuadResult t2 = integrate(g, -far, -gamma, 1e-10);
            worst = std::max(worst, std::abs(t1.value) + std::abs(t2.value));
        }
        rep.tail_maxima.push_back(worst);

        // iii) per-n best constants for |delta(t)| <= C1/|t| + C2
        double c2 = 0.0;
        for (double t = 1.0; t <= 16.0; t *= 1.25)
            c2 = std::max(c2, std::max(std::abs(dn(t)), std::abs(dn(-t))));
        double c1 = 0.0;
        for (double t = 1e-6; t < 1.0; t *= 1.15) {
            c1 = std::max(c1, std::max(0.0, (std::abs(dn(t)) - c2) * t));
            c1 = std::max(c1, std::max(0.0, (std::abs(dn(-t)) - c2) * t));
        }
        rep.c1_per_n.push_back(c1);
        rep.C1 = std::max(rep.C1, c1);
        rep.C2 = std::max(rep.C2, c2);
    }

    rep.unit_mass = rep.mass_errors.back() < 1e-6;
    rep.vanishing_tails = rep.tail_maxima.back() < 1e-6;
    // iii) fails when the fitted constant keeps growing along the schedule
    const std::size_t half = rep.c1_per_n.size() / 2;
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < rep.c1_per_n.size(); ++i) {
        if (i < half)
            head = std::max(head, rep.c1_per_n[i]);
        else
            tail = std::max(tail, rep.c1_per_n[i]);
    }
    rep.kernel_bound = tail <= 4.0 * std::max(head, 1e-300);
    return rep;
}

bool positivity_check(const MollifierSpec& spec) {
    return positivity_check([&spec](double x) { return spec.phi(x); }, -1.0, 1.0);
}

bool positivity_check(const std::function<double(double)>& f, double lo, double hi) {
    const int samples = 4001;
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        if (f(x) < -1e-12) return false;
    }
    return true;
}

} // namespace distlab
