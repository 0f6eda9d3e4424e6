#pragma once

// Negative binomial NB(r, p) on {0, 1, 2, ...} with pmf
//   P(X = l) = C(r+l-1, l) p^r q^l,  q = 1 - p,
// its shifted integer-r form (the Pascal law on {r, r+1, ...}), and the
// mean-tail probability P(X <= r q / p).

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nbtail/errors.hpp"
#include "nbtail/prob_value.hpp"
#include "nbtail/rational.hpp"
#include "nbtail/specfun.hpp"
#include "nbtail/summation.hpp"

namespace nbtail {

/// Shape r > 0 and success probability p in (0, 1].
class NBParams {
public:
    NBParams(double r, double p) : r_(r), p_(p) {
        if (!(r > 0.0) || !std::isfinite(r)) detail::fail_domain("NBParams", "r must be positive and finite");
        if (!(p > 0.0 && p <= 1.0)) detail::fail_domain("NBParams", "p must lie in (0, 1]");
    }

    [[nodiscard]] double r() const { return r_; }
    [[nodiscard]] double p() const { return p_; }
    [[nodiscard]] double q() const { return 1.0 - p_; }
    [[nodiscard]] bool degenerate() const { return p_ == 1.0; }

private:
    double r_;
    double p_;
};

/// The n with r/(n+r+1) < p <= r/(n+r); on that interval floor(r(1-p)/p) = n.
struct IntervalIndex {
    std::uint64_t n = 0;
};

namespace detail {

// Above this many terms, partial sums are accumulated largest-first.
inline constexpr std::uint64_t kLargestFirstThreshold = 150;

inline double log_nb_pmf(double r, double p, std::uint64_t l) {
    const double ld = static_cast<double>(l);
    return log_gen_binomial(ld + r - 1.0, l) + r * std::log(p) + ld * std::log1p(-p);
}

// sum_{k=0}^{n} C(k+r-1, k) p^r q^k for 0 < p < 1.
//
// Terms are generated by the ratio t_{k+1}/t_k = q (k+r)/(k+1) from an anchor
// term, which keeps the relative error near k * eps instead of the
// |ln t_k| * eps of independent log-domain evaluations. The anchor is
// t_0 = p^r when it is comfortably representable, otherwise the largest
// term of the range, evaluated in the log domain.
inline double nb_partial_sum(double r, double p, std::uint64_t n) {
    const double q = 1.0 - p;
    const double log_t0 = r * std::log(p);
    const bool collect = n > kLargestFirstThreshold;

    if (log_t0 > -600.0) {
        double t = std::pow(p, r);
        if (!collect) {
            CompensatedSum acc;
            acc += t;
            for (std::uint64_t k = 0; k < n; ++k) {
                const double kd = static_cast<double>(k);
                t *= q * (kd + r) / (kd + 1.0);
                acc += t;
            }
            return acc.value();
        }
        std::vector<double> terms;
        terms.reserve(n + 1);
        terms.push_back(t);
        for (std::uint64_t k = 0; k < n; ++k) {
            const double kd = static_cast<double>(k);
            t *= q * (kd + r) / (kd + 1.0);
            if (t == 0.0) break;
            terms.push_back(t);
        }
        return sum_largest_first(std::move(terms));
    }

    // Mode of the pmf, clamped into [0, n].
    std::uint64_t mode = 0;
    if (r > 1.0) {
        const double m = std::floor((r - 1.0) * q / p);
        mode = m >= static_cast<double>(n) ? n : static_cast<std::uint64_t>(m);
    }
    const double anchor = std::exp(log_nb_pmf(r, p, mode));
    std::vector<double> terms{anchor};
    double t = anchor;
    for (std::uint64_t k = mode; k > 0 && t > 0.0; --k) {
        const double kd = static_cast<double>(k);
        t *= kd / ((kd - 1.0 + r) * q);
        terms.push_back(t);
    }
    t = anchor;
    for (std::uint64_t k = mode; k < n && t > 0.0; ++k) {
        const double kd = static_cast<double>(k);
        t *= q * (kd + r) / (kd + 1.0);
        terms.push_back(t);
    }
    return sum_largest_first(std::move(terms));
}

inline IntervalIndex interval_index_exact(const Rational& r, const Rational& p) {
    // n lies in its interval iff p (n + r + 1) > r and p (n + r) <= r.
    auto in_interval = [&](const BigInt& n) {
        const Rational nr = Rational(n) + r;
        return p * (nr + 1) > r && p * nr <= r;
    };
    const double approx = to_double(r) * (1.0 - to_double(p)) / to_double(p);
    BigInt n;
    if (std::isfinite(approx) && approx < 1e18) {
        const double start = std::max(0.0, std::floor(approx) - 1.0);
        n = BigInt(static_cast<std::uint64_t>(start));
        for (int step = 0; step < 3; ++step, ++n) {
            if (in_interval(n)) return {n.convert_to<std::uint64_t>()};
        }
    }
    // Far from the scan start: the index equals floor(r (1-p) / p) exactly.
    n = floor_nonneg(r * (1 - p) / p);
    if (n > std::numeric_limits<std::uint64_t>::max()) {
        fail_domain("mean_interval_index", "interval index does not fit in 64 bits");
    }
    return {n.convert_to<std::uint64_t>()};
}

}  // namespace detail

/// P(X = l), evaluated in the log domain.
inline ProbValue nb_pmf(const NBParams& params, std::uint64_t l) {
    if (params.degenerate()) return {l == 0 ? 1.0 : 0.0, EvalPath::direct_sum};
    return {std::exp(detail::log_nb_pmf(params.r(), params.p(), l)), EvalPath::direct_sum};
}

/// P(X <= n) by compensated summation of the pmf.
inline ProbValue nb_cdf_sum(const NBParams& params, std::uint64_t n) {
    if (params.degenerate()) return {1.0, EvalPath::direct_sum};
    const double v = detail::nb_partial_sum(params.r(), params.p(), n);
    return {std::min(v, 1.0), EvalPath::direct_sum};
}

/// P(X <= n) as I_p(r, n+1).
inline ProbValue nb_cdf_beta(const NBParams& params, std::uint64_t n) {
    if (params.degenerate()) return {1.0, EvalPath::incomplete_beta};
    return reg_inc_beta(params.p(), params.r(), static_cast<double>(n) + 1.0);
}

inline double nb_mean(const NBParams& params) {
    return params.r() * params.q() / params.p();
}

/// Interval containing p, decided by exact rational comparisons so that
/// boundary points p = r/(n+r) land in interval n.
inline IntervalIndex mean_interval_index(const NBParams& params) {
    if (params.degenerate()) return {0};
    return detail::interval_index_exact(exact_rational(params.r()), exact_rational(params.p()));
}

/// Same as above for exactly specified (r, p), e.g. p = 1/5.
inline IntervalIndex mean_interval_index(const Rational& r, const Rational& p) {
    if (!(r > 0)) detail::fail_domain("mean_interval_index", "r must be positive");
    if (!(p > 0 && p <= 1)) detail::fail_domain("mean_interval_index", "p must lie in (0, 1]");
    return detail::interval_index_exact(r, p);
}

/// P(X <= r(1-p)/p) = sum over the first n+1 pmf terms, n = mean_interval_index.
inline ProbValue mean_tail_prob(const NBParams& params) {
    return nb_cdf_sum(params, mean_interval_index(params).n);
}

namespace detail {

inline std::uint64_t require_integer_shape(const char* where, double r) {
    if (!(r >= 1.0) || r != std::floor(r) || r > 9.0e15) {
        fail_domain(where, "r must be a positive integer");
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace detail

/// Pascal law: number of trials up to the r-th success,
/// P(B* = j) = C(j-1, r-1) q^(j-r) p^r for j >= r.
inline ProbValue pascal_pmf(double r, double p, std::uint64_t j) {
    const std::uint64_t ri = detail::require_integer_shape("pascal_pmf", r);
    if (!(p > 0.0 && p <= 1.0)) detail::fail_domain("pascal_pmf", "p must lie in (0, 1]");
    if (j < ri) detail::fail_domain("pascal_pmf", "j must be at least r");
    if (p == 1.0) return {j == ri ? 1.0 : 0.0, EvalPath::direct_sum};
    const double log_mass = log_gen_binomial(static_cast<double>(j - 1), ri - 1) +
                            static_cast<double>(j - ri) * std::log1p(-p) + r * std::log(p);
    return {std::exp(log_mass), EvalPath::direct_sum};
}

/// P(B* <= r/p), summed over j = r .. floor(r/p) with the upper limit exact.
inline ProbValue pascal_mean_tail(double r, double p) {
    const std::uint64_t ri = detail::require_integer_shape("pascal_mean_tail", r);
    if (!(p > 0.0 && p <= 1.0)) detail::fail_domain("pascal_mean_tail", "p must lie in (0, 1]");
    const BigInt last = floor_nonneg(exact_rational(r) / exact_rational(p));
    if (last > std::numeric_limits<std::uint64_t>::max()) {
        detail::fail_domain("pascal_mean_tail", "trial bound does not fit in 64 bits");
    }
    const auto j_max = last.convert_to<std::uint64_t>();
    CompensatedSum acc;
    for (std::uint64_t j = ri; j <= j_max; ++j) acc += pascal_pmf(r, p, j).value;
    return {std::min(acc.value(), 1.0), EvalPath::direct_sum};
}

}  // namespace nbtail
