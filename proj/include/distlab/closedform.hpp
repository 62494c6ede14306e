#pragma once

#include <string>

#include <json.hpp>

#include "distlab/distributions.hpp"
#include "distlab/products.hpp"

namespace distlab {

// Predicted limit of a regularized product, kept symbolic (sign, factorial,
// rational factor, A-constant index) and numerified on demand so the algebra
// stays separate from quadrature error.
struct Prediction {
    enum class Kind { value, zero, undefined };
    Kind kind = Kind::zero;

    int sign = 1;
    double factorial = 1.0;   // e.g. (k+l+1)!
    double rational = 1.0;    // e.g. 2/7 for four factors, b1 for three
    int pi_power = 1;         // divide by pi^pi_power
    int a_i = 0, a_j = 0;     // referenced A_{i,j}

    int required_m = 0;       // smallest even m making the prediction finite
    std::string scaling;      // the alpha/beta relation the value sits on
    std::string reason;       // for undefined
    bool convention = false;  // true where the coefficient extends the l<=4 table

    // sign * factorial * rational / pi^pi_power * A_{a_i, a_j};
    // throws DivergentConstant when spec.power() is too small.
    double coefficient(const MollifierSpec& spec) const;

    nlohmann::json to_json() const;
};

// delta^(k) x delta^(l) at the pairwise scaling alpha = (k+l+2) beta.
Prediction predict_pair_derivatives(int k, int l, double alpha, double beta, int m);

// method-1 product of `count` equal deltas.
Prediction predict_method1_equal_deltas(int count, double alpha, double beta, int m);

// method-2 (A-multiplication) of l equal deltas with the given weights.
Prediction predict_method2_equal_deltas(int l, double alpha, double beta, int m,
                                        const AWeights& weights);

// Target of the continuous-extension property: int S T Psi.
double predict_continuous_extension(const CompactFunction& s, const CompactFunction& t,
                                    const TestFunction& psi, double tol = 1e-10);

} // namespace distlab
