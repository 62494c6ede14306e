#include "distlab/kleingordon.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace distlab {

namespace {
constexpr double kPi = std::numbers::pi;

// geometric split ladder covering a boundary layer of the given width at the
// left end of [0, span]
std::vector<double> layer_splits(double width, double span) {
    std::vector<double> pts;
    for (double s = std::max(width, span * 1e-30); s < span; s *= 10.0) {
        pts.push_back(s);
        if (pts.size() > 60) break;
    }
    return pts;
}
} // namespace

void KGConfig::validate() const {
    if (!(mu > 0)) throw std::invalid_argument("KGConfig: mu must be positive");
    if (!(alpha > 0) || !(beta > 0))
        throw std::invalid_argument("KGConfig: exponents must be positive");
    bump.validate();
}

double omega(double k, double mu) {
    if (!(mu > 0)) throw std::invalid_argument("omega: mu must be positive");
    return std::hypot(k, mu);
}

double delta_plus_equal_time(double r, double mu, double tol) {
    if (!(r > 0))
        throw std::invalid_argument("delta_plus_equal_time: r must be positive "
                                    "(the coincident-point limit diverges)");
    const double z = mu * r;
    QuadResult q = integrate_semi_infinite(
        [z](double t) { return std::exp(-z * std::cosh(t)); }, 0.0, tol,
        DecayHint::exponential);
    return q.value / (2.0 * kPi);
}

double i_n_raw(const KGConfig& cfg, double n) {
    const double nb = std::pow(n, cfg.beta);
    const double na = std::pow(n, cfg.alpha);
    const double mu = cfg.mu;
    auto bump = cfg.bump.bump;
    auto f = [&bump, nb, na, mu](double k) {
        return bump(k / nb) * std::exp(-k / na) / omega(k, mu);
    };
    // structure scales: omega bend at mu, exponential decay at n^alpha,
    // support edge at n^beta
    std::vector<double> splits = layer_splits(std::min({mu, na, nb}) * 1e-2, nb);
    splits.push_back(std::min(mu, nb * 0.5));
    QuadResult q = integrate(f, 0.0, nb, cfg.quad_tol, splits);
    return q.value;
}

double i_n_compact(const KGConfig& cfg, double n) {
    const double nb = std::pow(n, cfg.beta);
    const double decay = std::pow(n, cfg.beta - cfg.alpha);
    const double c = cfg.mu / nb;
    auto bump = cfg.bump.bump;
    auto f = [&bump, decay, c](double q) {
        return bump(q) * std::exp(-q * decay) / std::sqrt(q * q + c * c);
    };
    // boundary layers: mass scale mu/n^beta and decay scale n^{alpha-beta}
    const double width = std::min(c, decay > 0 ? 1.0 / decay : 1.0);
    std::vector<double> splits = layer_splits(width * 1e-2, 1.0);
    QuadResult q = integrate(f, 0.0, 1.0, cfg.quad_tol, splits);
    return q.value;
}

double i_n(const KGConfig& cfg, double n) {
    const double raw = i_n_raw(cfg, n);
    const double compact = i_n_compact(cfg, n);
    if (std::abs(raw - compact) > 1e-8)
        throw std::logic_error("i_n: raw and substituted forms disagree beyond 1e-8");
    return compact;
}

double kg_kernel_integral(const KGConfig& cfg, double n) {
    const double nb = std::pow(n, cfg.beta);
    const double decay = std::pow(n, cfg.beta - cfg.alpha);
    const double c = cfg.mu / nb;
    auto f = [decay, c](double q) {
        return std::exp(-q * decay) / std::sqrt(q * q + c * c);
    };
    const double width = std::min(c, decay > 0 ? 1.0 / decay : 1.0);
    std::vector<double> splits = layer_splits(width * 1e-2, 1.0);
    QuadResult q = integrate(f, 0.0, 1.0, cfg.quad_tol, splits);
    return q.value;
}

double i_n_lower_bound(const KGConfig& cfg, double n) {
    if (cfg.alpha < cfg.beta)
        throw InvalidRegime("i_n_lower_bound: derived only for alpha >= beta");
    const double nb = std::pow(n, cfg.beta);
    const double decay = std::pow(n, cfg.beta - cfg.alpha);
    return std::exp(-decay) *
           std::log((nb + std::sqrt(nb * nb + cfg.mu * cfg.mu)) / cfg.mu);
}

KGStudy divergence_study(const KGConfig& cfg, const ExecConfig& exec) {
    cfg.validate();
    cfg.schedule.validate(8);
    KGStudy study;
    study.ns = cfg.schedule.values;
    const std::size_t count = study.ns.size();

    struct Cell {
        double value = 0.0, bound = 0.0, residual = 0.0;
    };
    std::vector<Cell> cells = map_indexed<Cell>(
        count,
        [&](std::size_t i) {
            Cell c;
            const double n = study.ns[i];
            const double raw = i_n_raw(cfg, n);
            c.value = i_n_compact(cfg, n);
            c.residual = std::abs(raw - c.value);
            c.bound = (cfg.alpha >= cfg.beta)
                          ? i_n_lower_bound(cfg, n)
                          : std::numeric_limits<double>::quiet_NaN();
            return c;
        },
        exec);

    std::vector<std::pair<double, double>> seq(count);
    for (std::size_t i = 0; i < count; ++i) {
        study.values.push_back(cells[i].value);
        study.bounds.push_back(cells[i].bound);
        study.max_dual_residual = std::max(study.max_dual_residual, cells[i].residual);
        seq[i] = {study.ns[i], cells[i].value};
    }

    double early = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, count); ++i)
        early = std::max(early, std::abs(study.values[i]));
    study.verdict = classify_limit(seq, 1e-6 * early, 1e-2);

    const std::size_t tail_len = (2 * count + 2) / 3;
    study.best_fit = fit_growth(
        std::span<const std::pair<double, double>>(seq).subspan(count - tail_len));
    return study;
}

std::complex<double> analytic_smearing_residual(
    const ModeAmplitude& a12, const std::function<double(double)>& zeta_hat, double t,
    double eps, double mu, double tol) {
    if (eps < 0) throw std::invalid_argument("analytic_smearing_residual: eps >= 0");
    if (eps == 0.0) return {0.0, 0.0};  // the (e^{-k eps} - 1) factor vanishes
    auto integrand = [&](double k) -> std::complex<double> {
        const double w = omega(k, mu);
        const std::complex<double> osc(std::cos(w * t), -std::sin(w * t));
        return (std::exp(-k * eps) - 1.0) * a12(k) * osc * zeta_hat(k) /
               std::sqrt(2.0 * w);
    };
    QuadResult re = integrate_semi_infinite(
        [&](double k) { return integrand(k).real(); }, 0.0, tol,
        DecayHint::exponential);
    QuadResult im = integrate_semi_infinite(
        [&](double k) { return integrand(k).imag(); }, 0.0, tol,
        DecayHint::exponential);
    return {re.value, im.value};
}

std::complex<double> mollifier_smearing_residual(
    const ModeAmplitude& a12, const std::function<double(double)>& zeta_hat, double t,
    const std::function<double(double)>& phi_tilde, double beta, double n, double mu,
    double tol) {
    if (!(n >= 1)) throw std::invalid_argument("mollifier_smearing_residual: n >= 1");
    const double nb = std::pow(n, beta);
    auto integrand = [&](double k) -> std::complex<double> {
        const double w = omega(k, mu);
        const std::complex<double> osc(std::cos(w * t), -std::sin(w * t));
        return a12(k) * osc * zeta_hat(-k) *
               (2.0 * kPi * phi_tilde(k / nb) - 1.0) / std::sqrt(4.0 * kPi * w);
    };
    QuadResult re_pos = integrate_semi_infinite(
        [&](double k) { return integrand(k).real(); }, 0.0, tol,
        DecayHint::exponential);
    QuadResult im_pos = integrate_semi_infinite(
        [&](double k) { return integrand(k).imag(); }, 0.0, tol,
        DecayHint::exponential);
    QuadResult re_neg = integrate_semi_infinite(
        [&](double k) { return integrand(-k).real(); }, 0.0, tol,
        DecayHint::exponential);
    QuadResult im_neg = integrate_semi_infinite(
        [&](double k) { return integrand(-k).imag(); }, 0.0, tol,
        DecayHint::exponential);
    return {re_pos.value + re_neg.value, im_pos.value + im_neg.value};
}

} // namespace distlab
