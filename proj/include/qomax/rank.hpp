#pragma once

#include <cmath>
#include <cstddef>

#include "qomax/errors.hpp"

namespace qomax {

namespace detail {

// ceil(x) robust against the product landing epsilon above an integer
// (10 * 0.9 evaluates to 9.000000000000002; its rank must be 9, not 10).
inline long ceil_nudged(double x) {
    return static_cast<long>(std::ceil(x - 1e-9));
}

}  // namespace detail

// 1-based rank of the order-q quantile in an ascending sample of size n:
// ceil(n*q), clamped to [1, n].
inline std::size_t quantile_rank(std::size_t n, double q) {
    if (n == 0) throw EmptyInput("quantile_rank: empty sample");
    if (!(q > 0.0 && q < 1.0)) throw InvalidQuantile("quantile_rank: q must be in (0,1)");
    long r = detail::ceil_nudged(static_cast<double>(n) * q);
    if (r < 1) r = 1;
    if (r > static_cast<long>(n)) r = static_cast<long>(n);
    return static_cast<std::size_t>(r);
}

}  // namespace qomax
