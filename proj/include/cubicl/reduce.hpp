#pragma once

#include <vector>

namespace cubicl {

// Deterministic pairwise summation: a fixed reduction tree independent of
// thread count, so family aggregates are bit-stable across runs.
template <class T>
T pairwise_sum(std::vector<T> v) {
    if (v.empty()) return T{};
    std::size_t n = v.size();
    while (n > 1) {
        std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
        if (n % 2) {
            v[half] = v[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return v[0];
}

}  // namespace cubicl
