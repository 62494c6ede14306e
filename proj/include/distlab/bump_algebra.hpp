#pragma once

#include <vector>

namespace distlab {

// Exact derivatives of x^m * exp(1/(x^2-1)) on (-1,1), zero outside.
//
// Every derivative stays in the ring P(x) * (x^2-1)^{-q} * exp(1/(x^2-1)):
// the k-th derivative has q = 2k and P obtained by the recurrence
//   P_{k+1} = P_k' (x^2-1)^2 - 2 q_k x P_k (x^2-1) - 2 x P_k.
// Evaluation goes through the combined exponent 1/u - q*log(-u), u = x^2-1,
// which stays finite all the way to the support boundary.
class BumpDerivatives {
public:
    explicit BumpDerivatives(int power);

    // k-th derivative at x (unnormalized: no 1/F factor)
    double eval(int k, double x) const;

    int max_order() const { return static_cast<int>(polys_.size()) - 1; }

private:
    std::vector<std::vector<double>> polys_;  // polys_[k] = coefficients of P_k
};

} // namespace distlab
