#include "distlab/closedform.hpp"

#include <cmath>
#include <numbers>

namespace distlab {

namespace {

constexpr double kRelTol = 1e-12;

bool close(double a, double b) {
    return std::abs(a - b) <= kRelTol * std::max({std::abs(a), std::abs(b), 1.0});
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

std::string relation(const std::string& lhs, double coeff, const std::string& rhs) {
    return lhs + " = " + std::to_string(coeff) + " * " + rhs;
}

} // namespace

double Prediction::coefficient(const MollifierSpec& spec) const {
    if (kind != Kind::value)
        throw std::logic_error("Prediction: no coefficient for zero/undefined kinds");
    const AConstant a = spec.a_constant(a_i, a_j);
    return sign * factorial * rational * a.value /
           std::pow(std::numbers::pi, pi_power);
}

nlohmann::json Prediction::to_json() const {
    nlohmann::json j;
    switch (kind) {
        case Kind::value: j["kind"] = "value"; break;
        case Kind::zero: j["kind"] = "zero"; break;
        case Kind::undefined: j["kind"] = "undefined"; break;
    }
    j["required_m"] = required_m;
    if (!scaling.empty()) j["scaling"] = scaling;
    if (kind == Kind::value) {
        j["sign"] = sign;
        j["factorial"] = factorial;
        j["rational"] = rational;
        j["pi_power"] = pi_power;
        j["a_constant"] = {a_i, a_j};
        if (convention) j["convention"] = true;
    }
    if (kind == Kind::undefined) j["reason"] = reason;
    return j;
}

Prediction predict_pair_derivatives(int k, int l, double alpha, double beta, int m) {
    if (k < 0 || l < 0) throw std::invalid_argument("orders must be nonnegative");
    if (m % 2 != 0) throw std::invalid_argument("m must be even");
    Prediction p;
    const int s = k + l + 2;
    p.scaling = relation("alpha", s, "beta");
    // smallest even m with m > k+l+1
    p.required_m = ((k + l + 2) % 2 == 0) ? (k + l + 2) : (k + l + 3);
    if (alpha > s * beta && !close(alpha, s * beta)) {
        p.kind = Prediction::Kind::zero;
        return p;
    }
    if (close(alpha, s * beta)) {
        if (k % 2 != l % 2) {
            p.kind = Prediction::Kind::zero;  // mixed parity
            return p;
        }
        p.kind = Prediction::Kind::value;
        p.sign = (k % 2 == 0) ? 1 : -1;
        p.factorial = factorial(k + l + 1);
        p.rational = 1.0;
        p.pi_power = 1;
        p.a_i = 1;
        p.a_j = k + l + 2;
        return p;
    }
    p.kind = Prediction::Kind::undefined;
    p.reason = "alpha < (k+l+2) beta is not covered by the pairwise table";
    return p;
}

Prediction predict_method1_equal_deltas(int count, double alpha, double beta, int m) {
    if (count < 2) throw std::invalid_argument("count must be >= 2");
    if (m % 2 != 0) throw std::invalid_argument("m must be even");
    Prediction p;
    if (count % 2 == 1) {
        // one exact delta always meets Phi(0) = 0
        p.kind = Prediction::Kind::zero;
        p.required_m = 2;
        p.scaling = "any alpha, beta > 0";
        return p;
    }
    const int l = count / 2;
    p.scaling = relation(std::to_string(l) + " * alpha", 3 * l - 1, "beta");
    p.required_m = 2;  // A_{l,2l} finite iff m*l >= 2l
    const double lhs = l * alpha, rhs = (3 * l - 1) * beta;
    if (lhs > rhs && !close(lhs, rhs)) {
        p.kind = Prediction::Kind::zero;
        return p;
    }
    if (close(lhs, rhs)) {
        p.kind = Prediction::Kind::value;
        p.sign = 1;
        p.factorial = 1.0;
        p.rational = 1.0;
        p.pi_power = l;
        p.a_i = l;
        p.a_j = 2 * l;
        return p;
    }
    p.kind = Prediction::Kind::undefined;
    p.reason = "l alpha < (3l-1) beta is not covered by the equal-delta table";
    return p;
}

Prediction predict_method2_equal_deltas(int l, double alpha, double beta, int m,
                                        const AWeights& weights) {
    if (l < 2) throw std::invalid_argument("l must be >= 2");
    if (m % 2 != 0) throw std::invalid_argument("m must be even");
    if (weights.order() != l)
        throw std::invalid_argument("weights order must equal l");
    if (l == 2) {
        // forced a1 = a2 = 1: reduces to the pairwise product
        return predict_pair_derivatives(0, 0, alpha, beta, m);
    }
    Prediction p;
    p.scaling = relation("alpha", l, "beta");
    p.required_m = 2 * (l - 1);  // from the fully-analytic-but-one slot term
    const double lhs = alpha, rhs = l * beta;
    if (lhs > rhs && !close(lhs, rhs)) {
        p.kind = Prediction::Kind::zero;
        return p;
    }
    if (close(lhs, rhs)) {
        p.kind = Prediction::Kind::value;
        p.sign = 1;
        p.factorial = 1.0;
        p.pi_power = 1;
        p.a_i = l - 1;
        p.a_j = 2;
        const double leading = weights.coefficients().front();
        if (l == 3) {
            p.rational = leading;  // b1
        } else if (l == 4) {
            p.rational = 2.0 * leading / 7.0;  // 2 c1 / 7
        } else {
            p.rational = leading;  // leading weight over pi, extended convention
            p.convention = true;
        }
        return p;
    }
    p.kind = Prediction::Kind::undefined;
    p.reason = "alpha < l beta is not covered by the A-multiplication table";
    return p;
}

double predict_continuous_extension(const CompactFunction& s, const CompactFunction& t,
                                    const TestFunction& psi, double tol) {
    const double lo = std::max({s.lo, t.lo, psi.lo()});
    const double hi = std::min({s.hi, t.hi, psi.hi()});
    if (!(lo < hi)) return 0.0;
    QuadResult q = integrate(
        [&](double x) { return s.f(x) * t.f(x) * psi(x); }, lo, hi, tol,
        std::vector<double>{0.0});
    return q.value;
}

} // namespace distlab
