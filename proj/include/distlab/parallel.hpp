#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace distlab {

enum class ExecMode { serial, openmp };

struct ExecConfig {
    ExecMode mode = ExecMode::openmp;
    int threads = 0;  // 0 = runtime default
};

// results[i] = fn(i) for i in [0, count).  Cells are independent and each is
// computed by the same deterministic code path, so the output is identical
// for both modes and any thread count.  The serial path is the reference the
// tests compare against.
template <class T, class Fn>
std::vector<T> map_indexed(std::size_t count, const Fn& fn, ExecConfig cfg = {}) {
    std::vector<T> out(count);
#ifdef _OPENMP
    if (cfg.mode == ExecMode::openmp && count > 1) {
        std::exception_ptr first_error;
        const int requested = cfg.threads;
#pragma omp parallel for schedule(dynamic) num_threads( \
        requested > 0 ? requested : omp_get_max_threads())
        for (long i = 0; i < static_cast<long>(count); ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(distlab_map_indexed_error)
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return out;
    }
#endif
    (void)cfg;
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
}

} // namespace distlab
