#ifndef GKKM_SWEEP_HPP
#define GKKM_SWEEP_HPP

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace gkkm {

/// Serial reference: fn(i) for i in [0, n), results in index order.
template <class T, class Fn>
std::vector<T> serial_map(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
}

/// OpenMP map over independent work items.  Results land in index order, so
/// output is identical to serial_map regardless of thread count; the first
/// per-item exception (by index) is rethrown after the loop.
/// threads == 1 falls back to the serial reference; threads == 0 uses the
/// OpenMP default.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn, int threads = 0) {
    if (threads == 1) return serial_map<T>(n, fn);
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errs(n);
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errs[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace gkkm

#endif
