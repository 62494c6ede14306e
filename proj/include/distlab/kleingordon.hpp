#pragma once

#include <complex>
#include <functional>

#include "distlab/mollifier.hpp"
#include "distlab/products.hpp"

namespace distlab {

// Configuration of the regularized two-point study in 1+1 dimensions.
// mu is the boson mass (omega_k = sqrt(k^2 + mu^2)); the name avoids the
// clash with the mollifier power m.
struct KGConfig {
    double mu = 1.0;
    FourierBumpSpec bump = FourierBumpSpec::standard();
    double alpha = 1.0;
    double beta = 1.0;
    NSchedule schedule = NSchedule::geometric();
    double quad_tol = 1e-10;

    void validate() const;
};

double omega(double k, double mu);

// Equal-time two-point function at spatial separation r > 0:
// (1/2pi) K0(mu r), with K0 from its integral representation
// int_0^inf exp(-z cosh t) dt.  Diverges like -(1/2pi) log r as r -> 0.
double delta_plus_equal_time(double r, double mu, double tol = 1e-10);

// I_n as the raw k-integral int_0^inf (dk/omega_k) bump(k/n^beta) e^{-k/n^alpha}.
double i_n_raw(const KGConfig& cfg, double n);

// I_n after q = k/n^beta: int_0^1 dq bump(q) e^{-q n^{beta-alpha}} /
// sqrt(q^2 + mu^2/n^{2beta}).
double i_n_compact(const KGConfig& cfg, double n);

// Computes both forms, checks their agreement (1e-8 absolute), returns the
// compact one.
double i_n(const KGConfig& cfg, double n);

// The bump-free kernel integral int_0^1 dq e^{-q n^{beta-alpha}} /
// sqrt(q^2 + mu^2/n^{2beta}) that the analytic bound minorizes.
double kg_kernel_integral(const KGConfig& cfg, double n);

// e^{-n^{beta-alpha}} log((n^beta + sqrt(n^{2beta}+mu^2))/mu); derived for
// alpha >= beta only (throws InvalidRegime otherwise).
double i_n_lower_bound(const KGConfig& cfg, double n);

struct KGStudy {
    std::vector<double> ns;
    std::vector<double> values;        // I_n
    std::vector<double> bounds;        // lower bound (NaN when alpha < beta)
    GrowthFit best_fit;                // on the schedule tail
    LimitVerdict verdict;
    double max_dual_residual = 0.0;    // worst |raw - compact| seen
};

KGStudy divergence_study(const KGConfig& cfg, const ExecConfig& exec = {});

using ModeAmplitude = std::function<std::complex<double>(double)>;

// First contribution to the analytic smearing defect:
// int_0^inf dk/sqrt(2 omega_k) (e^{-k eps} - 1) a12(k) e^{-i omega_k t} zeta_hat(k).
// Vanishes identically at eps = 0 and decays with eps.
std::complex<double> analytic_smearing_residual(const ModeAmplitude& a12,
                                                const std::function<double(double)>& zeta_hat,
                                                double t, double eps, double mu,
                                                double tol = 1e-10);

// First term of the mollifier smearing defect:
// int dk/sqrt(4 pi omega_k) a12(k) e^{-i omega_k t} zeta_hat(-k)
//     (2 pi phi_tilde(k/n^beta) - 1).
// Decays with n when 2 pi phi_tilde(0) = 1.
std::complex<double> mollifier_smearing_residual(const ModeAmplitude& a12,
                                                 const std::function<double(double)>& zeta_hat,
                                                 double t,
                                                 const std::function<double(double)>& phi_tilde,
                                                 double beta, double n, double mu,
                                                 double tol = 1e-10);

} // namespace distlab
