// Timing comparison of the serial reference evaluation against the
// OpenMP-parallel one on a representative sweep workload.

#include <chrono>
#include <cstdio>

#include "distlab/products.hpp"

using namespace distlab;

namespace {

double run(ExecMode mode, int threads, double* checksum) {
    auto spec = MollifierSpec::make(2);
    auto psi = TestFunction::bump("bench", 0.0, 1.0);
    NSchedule sched = NSchedule::geometric(10.0, 2.0, 10);
    std::vector<double> alphas, betas;
    for (double a = 1.0; a <= 3.0; a += 0.25) alphas.push_back(a);
    for (double b = 0.5; b <= 1.5; b += 0.25) betas.push_back(b);

    ProductOptions cell_opts;  // cells parallelize, each cell stays serial
    cell_opts.exec.mode = ExecMode::serial;
    ExecConfig exec{mode, threads};

    const auto t0 = std::chrono::steady_clock::now();
    auto values = map_indexed<double>(
        alphas.size() * betas.size(),
        [&](std::size_t idx) {
            RegParams params{alphas[idx / betas.size()], betas[idx % betas.size()], {}};
            auto v = pair_product(DeltaDerivative{0}, DeltaDerivative{0}, params, sched,
                                  psi, spec, cell_opts);
            return v.kind == LimitVerdict::Kind::converged ? v.value : 0.0;
        },
        exec);
    const auto t1 = std::chrono::steady_clock::now();
    double sum = 0.0;
    for (double v : values) sum += v;
    *checksum = sum;
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
    double serial_sum = 0.0, parallel_sum = 0.0;
    const double warm = run(ExecMode::serial, 0, &serial_sum);  // cache-warming pass
    (void)warm;
    const double t_serial = run(ExecMode::serial, 0, &serial_sum);
    const double t_parallel = run(ExecMode::openmp, 0, &parallel_sum);
    std::printf("workload: 45-cell pair-delta sweep, 10-point schedule each\n");
    std::printf("serial reference: %8.3f s  (checksum %.12g)\n", t_serial, serial_sum);
    std::printf("openmp parallel:  %8.3f s  (checksum %.12g)\n", t_parallel,
                parallel_sum);
    std::printf("speedup:          %8.2fx\n", t_serial / t_parallel);
    if (serial_sum != parallel_sum) {
        std::printf("ERROR: checksums differ between modes\n");
        return 1;
    }
    return 0;
}
