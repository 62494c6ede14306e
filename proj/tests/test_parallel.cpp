#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "distlab/parallel.hpp"
#include "distlab/products.hpp"

using namespace distlab;

TEST_CASE("openmp map matches the serial reference bit for bit") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("b", 0.0, 1.0);
    RegParams params{2.0, 1.0, {}};
    NSchedule sched = NSchedule::geometric(10.0, 2.0, 10);

    auto term = [&](std::size_t i) {
        return pair_term(DeltaDerivative{0}, DeltaDerivative{0}, params,
                         sched.values[i], psi, spec);
    };
    ExecConfig serial{ExecMode::serial, 0};
    ExecConfig wide{ExecMode::openmp, 0};
    ExecConfig narrow{ExecMode::openmp, 2};
    auto a = map_indexed<double>(sched.values.size(), term, serial);
    auto b = map_indexed<double>(sched.values.size(), term, wide);
    auto c = map_indexed<double>(sched.values.size(), term, narrow);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(a[i] == c[i]);
    }
}

TEST_CASE("product drivers give identical verdicts in both modes") {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("b", 0.0, 1.0);
    RegParams params{2.0, 1.0, {}};
    NSchedule sched = NSchedule::geometric(10.0, 2.0, 8);

    ProductOptions serial;
    serial.exec.mode = ExecMode::serial;
    ProductOptions parallel;
    parallel.exec.mode = ExecMode::openmp;

    auto vs = pair_product(DeltaDerivative{0}, DeltaDerivative{0}, params, sched, psi,
                           spec, serial);
    auto vp = pair_product(DeltaDerivative{0}, DeltaDerivative{0}, params, sched, psi,
                           spec, parallel);
    CHECK(vs.kind == vp.kind);
    CHECK(vs.value == vp.value);
    REQUIRE(vs.sequence.size() == vp.sequence.size());
    for (std::size_t i = 0; i < vs.sequence.size(); ++i)
        CHECK(vs.sequence[i].second == vp.sequence[i].second);
}

TEST_CASE("exceptions from worker cells propagate") {
    auto boom = [](std::size_t i) -> double {
        if (i == 3) throw std::runtime_error("cell failure");
        return static_cast<double>(i);
    };
    ExecConfig wide{ExecMode::openmp, 0};
    CHECK_THROWS_AS((void)map_indexed<double>(8, boom, wide), std::runtime_error);
}
