#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace evofam {

/// Upper bound on worker threads for grid scans. 1 runs everything inline.
struct Parallelism {
    unsigned threads = 1;
};

namespace detail {

/// acc = max(acc, v), except that NaN is sticky so a broken evaluation cannot
/// hide inside a maximum.
inline void raise_max(double& acc, double v)
{
    if (std::isnan(acc))
        return;
    if (std::isnan(v) || v > acc)
        acc = v;
}

/// Elementwise max over fn(i, acc) for i in [0, n), where fn raises entries of
/// a width-sized accumulator. Work is strided over threads; max is order
/// independent, so the result does not depend on the thread count.
template <class Fn>
std::vector<double> parallel_max(std::size_t n, std::size_t width, Parallelism par, Fn&& fn)
{
    const unsigned threads = static_cast<unsigned>(std::clamp<std::size_t>(par.threads, 1, std::max<std::size_t>(n, 1)));
    if (threads == 1) {
        std::vector<double> acc(width, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            fn(i, acc);
        return acc;
    }
    std::vector<std::vector<double>> partial(threads, std::vector<double>(width, 0.0));
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned id = 0; id < threads; ++id) {
            pool.emplace_back([&, id] {
                try {
                    for (std::size_t i = id; i < n; i += threads)
                        fn(i, partial[id]);
                } catch (...) {
                    errors[id] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<double> acc(width, 0.0);
    for (const auto& p : partial)
        for (std::size_t j = 0; j < width; ++j)
            raise_max(acc[j], p[j]);
    return acc;
}

} // namespace detail
} // namespace evofam
