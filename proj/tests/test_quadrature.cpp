#include <doctest.h>

#include <cmath>
#include <numbers>

#include "distlab/quadrature.hpp"
#include "oracles.hpp"

using namespace distlab;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("constant integrand") {
    auto r = integrate([](double) { return 1.0; }, 0.0, 1.0, 1e-14);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("odd integrand on symmetric interval") {
    const double split[] = {0.0};
    auto r = integrate([](double x) { return x * std::exp(-x * x); }, -2.0, 2.0, 1e-12,
                       split);
    CHECK(std::abs(r.value) < 1e-12);
}

TEST_CASE("narrow Poisson kernel against the arctan closed form") {
    const double eps = 1e-3;
    auto f = [eps](double x) { return (1.0 / kPi) * eps / (x * x + eps * eps); };
    std::vector<double> splits = geometric_splits(eps, -1.0, 1.0);
    auto r = integrate(f, -1.0, 1.0, 1e-10, splits);
    const double want = (2.0 / kPi) * std::atan(1.0 / eps);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("endpoint singularity with declared split") {
    const double split[] = {0.0};
    auto r = integrate([](double x) { return 1.0 / std::sqrt(std::abs(x)); }, -1.0, 1.0,
                       1e-9, split);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("semi-infinite exponential decay") {
    auto r = integrate_semi_infinite([](double k) { return std::exp(-k); }, 0.0, 1e-12,
                                     DecayHint::exponential);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("semi-infinite algebraic decay") {
    auto r = integrate_semi_infinite([](double k) { return 1.0 / (1.0 + k * k); }, 0.0,
                                     1e-12, DecayHint::algebraic);
    CHECK(r.value == doctest::Approx(kPi / 2.0).epsilon(1e-10));
}

TEST_CASE("semi-infinite mixed integrand against the fixed-grid oracle") {
    auto f = [](double k) { return std::exp(-k) / std::sqrt(k * k + 1.0); };
    auto r = integrate_semi_infinite(f, 0.0, 1e-12, DecayHint::exponential);
    // tail beyond 45 is below e^-45; the oracle grid covers the rest
    const double want = oracles::simpson(f, 0.0, 45.0, 1000000);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("determinism: identical inputs give identical bits") {
    auto f = [](double x) { return std::sin(17.0 * x) / (1.0 + x * x); };
    auto a = integrate(f, -3.0, 5.0, 1e-11);
    auto b = integrate(f, -3.0, 5.0, 1e-11);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("additivity across a midpoint") {
    auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-0.2 * x); };
    auto whole = integrate(f, 0.0, 4.0, 1e-11);
    auto left = integrate(f, 0.0, 1.3, 1e-11);
    auto right = integrate(f, 1.3, 4.0, 1e-11);
    CHECK(std::abs(whole.value - left.value - right.value) <=
          whole.error_estimate + left.error_estimate + right.error_estimate + 1e-13);
}

TEST_CASE("budget exhaustion reports NoConvergence with a partial result") {
    QuadOptions opts;
    opts.tol = 1e-14;
    opts.max_intervals = 8;  // far too small for the oscillation below
    auto f = [](double x) { return std::sin(200.0 * x); };
    CHECK_THROWS_AS((void)integrate(f, 0.0, 10.0, opts), NoConvergence);
    try {
        (void)integrate(f, 0.0, 10.0, opts);
    } catch (const NoConvergence& e) {
        CHECK(std::isfinite(e.partial_value));
        CHECK(e.error_estimate > opts.tol);
    }
}

TEST_CASE("invalid interval is rejected") {
    CHECK_THROWS_AS((void)integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-10),
                    std::invalid_argument);
}
