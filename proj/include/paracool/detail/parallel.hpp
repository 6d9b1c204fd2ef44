#pragma once

#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paracool {

template <typename F>
void parallel_for_indexed(std::size_t n, int workers, F &&f) {
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
#ifdef _OPENMP
    int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
    (void)workers;
#endif
    for (long i = 0; i < count; ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace paracool
