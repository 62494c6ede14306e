#pragma once

#include <span>
#include <utility>
#include <vector>

#include "distlab/distributions.hpp"
#include "distlab/extrapolation.hpp"
#include "distlab/parallel.hpp"

namespace distlab {

// Regularization exponents.  pair_params, when set, assigns one (alpha, beta)
// per coupled pair for N >= 4 factors; otherwise (alpha, beta) is used for
// every pair.
struct RegParams {
    double alpha = 1.0;
    double beta = 1.0;
    std::vector<std::pair<double, double>> pair_params;

    void validate(std::size_t n_pairs) const;
};

// Strictly increasing probe schedule for the regularization index n.
struct NSchedule {
    std::vector<double> values;
    static NSchedule geometric(double start = 10.0, double ratio = 2.0, int count = 14);
    void validate(std::size_t min_points = 6) const;
};

// Weights of the A-multiplication.  Orders 2..4 use the constraints
// a1+a2=2, b1+b2=2, 2c1+3c2+2c3=7; order l >= 5 takes one weight per
// mollified-slot count p = 1..l-1 with sum_p C(l,p) w_p = 2^l - 2.
class AWeights {
public:
    static AWeights pairwise(double a1, double a2);
    static AWeights triple(double b1, double b2);
    static AWeights quadruple(double c1, double c2, double c3);
    static AWeights general(int order, std::vector<double> w);
    static AWeights defaults(int order);  // the symmetric point (all ones)

    int order() const { return order_; }
    const std::vector<double>& coefficients() const { return w_; }
    double leading() const { return w_.back(); }

private:
    AWeights(int order, std::vector<double> w) : order_(order), w_(std::move(w)) {}
    int order_;
    std::vector<double> w_;  // w_[p-1] = weight of assignments with p mollified slots
};

struct LimitVerdict {
    enum class Kind { converged, exact_zero, divergent, inconclusive };
    Kind kind = Kind::inconclusive;
    double value = 0.0;   // converged limit
    GrowthFit fit;        // populated for divergent
    std::vector<std::pair<double, double>> sequence;  // (n, value)
    double zero_floor = 0.0;

    bool is_zero() const {
        return kind == Kind::exact_zero ||
               (kind == Kind::converged && std::abs(value) <= zero_floor);
    }
};

const char* to_string(LimitVerdict::Kind k);

struct ProductOptions {
    double quad_tol = 1e-8;        // per-term integral tolerance
    double rel_tol = 1e-2;         // Cauchy tolerance on accelerated tails
    double zero_floor_factor = 1e-6;  // floor = factor * early-term scale
    int max_count = 6;             // N cap for the N-fold products
    ExecConfig exec;
};

// One finite-n term of the symmetrized pairwise product:
// (1/2) int [S_n T_red + T_n S_red] Psi.
double pair_term(const Distribution& s, const Distribution& t, const RegParams& params,
                 double n, const TestFunction& psi, const MollifierSpec& spec,
                 const ProductOptions& opts = {});

LimitVerdict pair_product(const Distribution& s, const Distribution& t,
                          const RegParams& params, const NSchedule& schedule,
                          const TestFunction& psi, const MollifierSpec& spec,
                          const ProductOptions& opts = {});

// Method-1 N-fold term.  Even N: average over perfect pairings (and over the
// distinct assignments of the per-pair parameters) of the product of
// symmetrized regularized pair factors, integrated against Psi.  Odd N:
// average over the choices of one factor applied exactly to the regularized
// remainder times Psi.
double nfold_method1_term(std::span<const Distribution> dists, const RegParams& params,
                          double n, const TestFunction& psi, const MollifierSpec& spec,
                          const ProductOptions& opts = {});

LimitVerdict nfold_method1(std::span<const Distribution> dists, const RegParams& params,
                           const NSchedule& schedule, const TestFunction& psi,
                           const MollifierSpec& spec, const ProductOptions& opts = {});

// Method-2 (A-multiplication) term: weighted sum over the mixed assignments
// of mollified/analytic regularizations to the N slots.
double amethod_term(std::span<const Distribution> dists, const AWeights& weights,
                    const RegParams& params, double n, const TestFunction& psi,
                    const MollifierSpec& spec, const ProductOptions& opts = {});

LimitVerdict amethod(std::span<const Distribution> dists, const AWeights& weights,
                     const RegParams& params, const NSchedule& schedule,
                     const TestFunction& psi, const MollifierSpec& spec,
                     const ProductOptions& opts = {});

// Sequence classification: Aitken-accelerated Cauchy test for convergence,
// floor test for exact zero, growth fit for divergence.
LimitVerdict classify_limit(std::span<const std::pair<double, double>> sequence,
                            double floor, double rel_tol);

} // namespace distlab
