#pragma once

#include <cstddef>
#include <vector>

namespace humbertq {

// Evaluates body(i) for i in [0, n) and returns the results in index order.
// Runs the iterations in parallel when built with OpenMP; because every
// index is computed independently and written to its own slot, the output
// is identical to the serial loop. body must not throw: catch inside the
// callable and encode failures in the returned value.
template <class F>
auto map_indexed(std::size_t n, F&& body)
    -> std::vector<decltype(body(std::size_t{0}))> {
    std::vector<decltype(body(std::size_t{0}))> out(n);
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < sn; ++i)
        out[static_cast<std::size_t>(i)] = body(static_cast<std::size_t>(i));
    return out;
}

// Serial twin of map_indexed, kept as the reference the parallel loop is
// compared against in tests and benchmarks.
template <class F>
auto map_indexed_serial(std::size_t n, F&& body)
    -> std::vector<decltype(body(std::size_t{0}))> {
    std::vector<decltype(body(std::size_t{0}))> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = body(i);
    return out;
}

}  // namespace humbertq
