#include <doctest.h>

#include <cmath>
#include <numbers>

#include "distlab/products.hpp"
#include "oracles.hpp"

using namespace distlab;
namespace {
constexpr double kPi = std::numbers::pi;

CompactFunction hat() {
    CompactFunction c;
    c.f = [](double x) { return std::max(0.0, 1.0 - std::abs(x)); };
    c.lo = -1.0;
    c.hi = 1.0;
    c.hoelder = 1.0;
    return c;
}

CompactFunction parabola() {
    CompactFunction c;
    c.f = [](double x) { return std::abs(x) < 0.7 ? 0.49 - x * x : 0.0; };
    c.lo = -0.7;
    c.hi = 0.7;
    c.hoelder = 1.0;
    return c;
}
} // namespace

TEST_CASE("schedule and weight validation") {
    auto sched = NSchedule::geometric();
    CHECK(sched.values.size() == 14);
    CHECK(sched.values.front() == 10.0);
    CHECK(sched.values.back() == doctest::Approx(81920.0));
    CHECK_NOTHROW(sched.validate());
    NSchedule bad;
    bad.values = {10, 5, 20, 40, 80, 160};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    CHECK_THROWS_AS((void)AWeights::pairwise(1.5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS((void)AWeights::quadruple(1.0, 1.0, 2.0), std::invalid_argument);
    CHECK_NOTHROW((void)AWeights::defaults(2));
    CHECK_NOTHROW((void)AWeights::defaults(3));
    CHECK_NOTHROW((void)AWeights::defaults(4));
    CHECK_NOTHROW((void)AWeights::defaults(6));
}

TEST_CASE("pair term matches the substituted t = x n^beta form for delta x delta") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("p", 0.0, 1.0);
    RegParams params{2.0, 1.0, {}};
    for (double n : {10.0, 80.0, 640.0}) {
        const double got = pair_term(DeltaDerivative{0}, DeltaDerivative{0}, params, n,
                                     psi, spec);
        // (1/pi) int Phi(t) n^{2b-a} / (t^2 + n^{2b-2a}) Psi(t/n^b) dt
        const double eta2 = std::pow(n, 2.0 * (params.beta - params.alpha));
        const double scale = std::pow(n, 2.0 * params.beta - params.alpha);
        const double nb = std::pow(n, params.beta);
        auto sub = [&](double t) {
            return spec.phi(t) * scale / (t * t + eta2) * psi(t / nb) / kPi;
        };
        const double want = oracles::simpson(sub, -1.0, 1.0, 400000);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("pair term is symmetric under argument exchange") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("s", 0.1, 0.9);
    RegParams params{1.0, 0.5, {}};
    Distribution a = DeltaDerivative{0};
    Distribution b = hat();
    const double ab = pair_term(a, b, params, 25.0, psi, spec);
    const double ba = pair_term(b, a, params, 25.0, psi, spec);
    CHECK(ab == ba);
}

TEST_CASE("amethod with a1 = a2 = 1 reproduces pair_term to machine precision") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("m", 0.0, 1.0);
    auto w = AWeights::pairwise(1.0, 1.0);
    std::vector<std::pair<Distribution, Distribution>> cases = {
        {DeltaDerivative{0}, DeltaDerivative{0}},
        {DeltaDerivative{0}, hat()},
        {hat(), parabola()},
        {DeltaDerivative{1}, DeltaDerivative{0}},
    };
    RegParams params{1.5, 0.7, {}};
    for (const auto& [s, t] : cases) {
        std::vector<Distribution> pair_dists = {s, t};
        const double direct = pair_term(s, t, params, 40.0, psi, spec);
        const double viaA = amethod_term(pair_dists, w, params, 40.0, psi, spec);
        CHECK(viaA == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("weighted pairwise amethod splits the two orientations") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("w", 0.0, 1.0);
    RegParams params{1.5, 0.7, {}};
    std::vector<Distribution> dists = {DeltaDerivative{0}, hat()};
    const double v11 = amethod_term(dists, AWeights::pairwise(1.0, 1.0), params, 30.0,
                                    psi, spec);
    const double v20 = amethod_term(dists, AWeights::pairwise(2.0, 0.0), params, 30.0,
                                    psi, spec);
    const double v02 = amethod_term(dists, AWeights::pairwise(0.0, 2.0), params, 30.0,
                                    psi, spec);
    CHECK(v11 == doctest::Approx(0.5 * (v20 + v02)).epsilon(1e-12));
    CHECK(v20 != doctest::Approx(v02).epsilon(1e-6));  // orientations differ
}

TEST_CASE("N = 2 method-1 term agrees with pair_term") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("c", 0.0, 1.0);
    RegParams params{1.0, 1.0, {}};
    std::vector<Distribution> two = {hat(), hat()};
    const double via_n = nfold_method1_term(two, params, 30.0, psi, spec);
    const double direct = pair_term(two[0], two[1], params, 30.0, psi, spec);
    CHECK(via_n == doctest::Approx(direct).epsilon(1e-7));
}

TEST_CASE("odd equal-delta method-1 terms vanish identically") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("z", 0.0, 1.0);
    RegParams params{1.3, 0.9, {}};
    for (int count : {3, 5}) {
        std::vector<Distribution> dists(count, Distribution{DeltaDerivative{0}});
        for (double n : {10.0, 100.0, 5000.0})
            CHECK(nfold_method1_term(dists, params, n, psi, spec) == 0.0);
    }
}

TEST_CASE("four-delta method-1 term equals the equal-distribution closed integrand") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("f", 0.0, 1.0);
    const double alpha = 2.5, beta = 1.0, n = 40.0;
    RegParams params{alpha, beta, {}};
    std::vector<Distribution> dists(4, Distribution{DeltaDerivative{0}});
    const double got = nfold_method1_term(dists, params, n, psi, spec);
    // (delta_n delta_red)^2 Psi integrated directly on the substituted grid
    const double eps = std::pow(n, -alpha);
    auto integrand = [&](double x) {
        const double dn = spec.delta_n(beta, n, x);
        const double dr = (1.0 / kPi) * eps / (x * x + eps * eps);
        return dn * dn * dr * dr * psi(x);
    };
    const double w = std::pow(n, -beta);
    const double want = oracles::simpson(integrand, -w, w, 2000000);
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("pair term vanishes trivially when psi'support excludes the deltas") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("off", 0.5, 0.25);  // psi(0) = 0
    RegParams params{2.0, 1.0, {}};
    for (double n : {10.0, 100.0, 1000.0})
        CHECK(pair_term(DeltaDerivative{0}, DeltaDerivative{0}, params, n, psi, spec) ==
              0.0);
}

TEST_CASE("distinct per-pair parameters go through the permutation average") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("pp", 0.0, 1.0);
    std::vector<Distribution> four(4, Distribution{DeltaDerivative{0}});
    // alpha_1 + alpha_2 = 5 beta sits on the same critical line as the
    // equal-parameter case, with the limit (1/pi^2) A_{2,4} psi(0)
    RegParams params{0.0, 0.0, {{3.0, 1.0}, {2.0, 1.0}}};
    params.alpha = 1.0;
    params.beta = 1.0;
    const double got = nfold_method1_term(four, params, 20480.0, psi, spec);
    const double want =
        spec.a_constant(2, 4).value / (std::numbers::pi * std::numbers::pi);
    CHECK(got == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("factor count caps") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("x", 0.0, 1.0);
    RegParams params{1.0, 1.0, {}};
    std::vector<Distribution> seven(7, Distribution{DeltaDerivative{0}});
    CHECK_THROWS_AS(
        (void)nfold_method1_term(seven, params, 10.0, psi, MollifierSpec::make(2)),
        UnsupportedCount);
    std::vector<Distribution> two(2, Distribution{DeltaDerivative{0}});
    CHECK_THROWS_AS(
        (void)amethod_term(two, AWeights::defaults(3), params, 10.0, psi, spec),
        std::invalid_argument);
}

TEST_CASE("classifier on synthetic sequences") {
    auto make_seq = [](const std::function<double(double, int)>& f) {
        std::vector<std::pair<double, double>> seq;
        double n = 10.0;
        for (int j = 0; j < 14; ++j, n *= 2.0) seq.emplace_back(n, f(n, j));
        return seq;
    };

    auto constant = classify_limit(make_seq([](double, int) { return 0.7; }), 1e-8, 1e-2);
    CHECK(constant.kind == LimitVerdict::Kind::converged);
    CHECK(constant.value == doctest::Approx(0.7));

    auto geometric =
        classify_limit(make_seq([](double, int j) { return 2.0 + std::pow(0.5, j); }),
                       1e-8, 1e-2);
    CHECK(geometric.kind == LimitVerdict::Kind::converged);
    CHECK(geometric.value == doctest::Approx(2.0).epsilon(1e-6));

    auto inv = classify_limit(make_seq([](double n, int) { return 1.5 + 1.0 / n; }),
                              1e-8, 1e-2);
    CHECK(inv.kind == LimitVerdict::Kind::converged);
    CHECK(inv.value == doctest::Approx(1.5).epsilon(1e-4));

    auto logseq = classify_limit(make_seq([](double n, int) { return std::log(n); }),
                                 1e-8, 1e-2);
    CHECK(logseq.kind == LimitVerdict::Kind::divergent);
    CHECK(logseq.fit.model == GrowthFit::Model::logarithmic);

    auto powseq =
        classify_limit(make_seq([](double n, int) { return std::pow(n, 0.3); }), 1e-8,
                       1e-2);
    CHECK(powseq.kind == LimitVerdict::Kind::divergent);
    CHECK(powseq.fit.model == GrowthFit::Model::power);

    auto expl = classify_limit(make_seq([](double, int j) { return std::pow(4.0, j); }),
                               1e-8, 1e-2);
    CHECK(expl.kind == LimitVerdict::Kind::divergent);

    auto zero = classify_limit(make_seq([](double, int) { return 1e-12; }), 1e-8, 1e-2);
    CHECK(zero.kind == LimitVerdict::Kind::exact_zero);
    CHECK(zero.is_zero());
}

TEST_CASE("pair product of two deltas at the critical and supercritical scalings") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("v", 0.0, 1.0);
    ProductOptions opts;
    opts.exec.mode = ExecMode::openmp;
    NSchedule sched = NSchedule::geometric(10.0, 2.0, 10);

    RegParams critical{2.0, 1.0, {}};
    auto v = pair_product(DeltaDerivative{0}, DeltaDerivative{0}, critical, sched, psi,
                          spec, opts);
    CHECK(v.kind == LimitVerdict::Kind::converged);
    const double want = spec.a_constant(1, 2).value / kPi;
    CHECK(v.value == doctest::Approx(want).epsilon(1e-3));

    RegParams super{3.0, 1.0, {}};
    auto z = pair_product(DeltaDerivative{0}, DeltaDerivative{0}, super, sched, psi,
                          spec, opts);
    CHECK(z.is_zero());
}
