#pragma once

// Ground truth that does not share code paths with the floating-point
// evaluators: exact rational partial sums for integer r.

#include <cstdint>

#include "nbtail/errors.hpp"
#include "nbtail/rational.hpp"

namespace nbtail {

/// sum_{k=0}^{n} C(k+r-1, k) p^r (1-p)^k, exactly, for integer r >= 1 and rational p in (0, 1].
inline Rational exact_cdf_rational(std::uint64_t r, const Rational& p, std::uint64_t n) {
    if (r < 1) detail::fail_domain("exact_cdf_rational", "r must be a positive integer");
    if (!(p > 0 && p <= 1)) detail::fail_domain("exact_cdf_rational", "p must lie in (0, 1]");
    const Rational q = 1 - p;
    Rational p_pow_r = 1;
    for (std::uint64_t i = 0; i < r; ++i) p_pow_r *= p;

    // C(k+r-1, k) q^k by the ratio (k+r)/(k+1) q.
    Rational term = 1;
    Rational total = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
        term *= q * Rational(BigInt(k + r), BigInt(k + 1));
        total += term;
    }
    return total * p_pow_r;
}

}  // namespace nbtail
