#pragma once

// Infimum of the mean-tail probability of NB(r, p) over p, and numerical
// checks of the identities behind it.
//
// On the interval r/(n+r+1) < p <= r/(n+r) every pmf term p^r q^k (k <= n)
// increases with p, so the infimum there is the left-limit
//
//   a_r(n) = lambda^r sum_{k=0}^{n} C(k+r-1, k) (1 - lambda)^k,  lambda = r/(n+r+1),
//
// which also equals I_lambda(r, n+1). a_r is strictly increasing in n, so the
// global infimum is a_r(0) = (r/(r+1))^r. It is never attained: the point
// p = r/(r+1) itself belongs to the n = 1 interval.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nbtail/errors.hpp"
#include "nbtail/nbdist.hpp"
#include "nbtail/quadrature.hpp"
#include "nbtail/rational.hpp"
#include "nbtail/specfun.hpp"
#include "nbtail/summation.hpp"

namespace nbtail {

enum class SeqForm { sum, integral };

inline const char* to_string(SeqForm form) { return form == SeqForm::sum ? "sum" : "integral"; }

/// One term a_r(n) of the per-interval infimum sequence.
struct SeqEntry {
    std::uint64_t n = 0;
    double value = 0.0;
    SeqForm form = SeqForm::sum;
};

/// An infimum value; `attained` is false for every infimum this module reports.
struct Infimum {
    double value = 0.0;
    bool attained = false;
};

/// Outcome of comparing two numerically computed sides of an identity or inequality.
struct VerifyReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool passed = false;
    double tolerance = 0.0;
    std::string error;  // non-empty when a side could not be computed
};

namespace detail {

inline void require_shape(const char* where, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) fail_domain(where, "r must be positive and finite");
}

inline double lambda_point(double r, std::uint64_t n) {
    return r / (static_cast<double>(n) + r + 1.0);
}

inline VerifyReport compare(double lhs, double rhs, double tol) {
    VerifyReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.tolerance = tol;
    rep.abs_err = std::abs(lhs - rhs);
    rep.rel_err = rhs != 0.0 ? rep.abs_err / std::abs(rhs) : rep.abs_err;
    rep.passed = rep.rel_err <= tol;
    return rep;
}

inline VerifyReport failed_report(const std::string& why, double tol) {
    VerifyReport rep;
    rep.lhs = std::numeric_limits<double>::quiet_NaN();
    rep.rhs = std::numeric_limits<double>::quiet_NaN();
    rep.abs_err = rep.lhs;
    rep.rel_err = rep.lhs;
    rep.tolerance = tol;
    rep.error = why;
    return rep;
}

// r^r (n+1)^(n+1) / (n+r+1)^(n+r+2), in the log domain.
inline double tail_closed_form(double r, std::uint64_t n) {
    const double n1 = static_cast<double>(n) + 1.0;
    return std::exp(r * std::log(r) + n1 * std::log(n1) - (n1 + r + 1.0) * std::log(n1 + r));
}

// g(u) = (u-1)^(n+1) u^(-n-r-2).
inline double slab_integrand(double r, std::uint64_t n, double u) {
    const double n1 = static_cast<double>(n) + 1.0;
    return std::exp(n1 * std::log(u - 1.0) - (n1 + r + 1.0) * std::log(u));
}

}  // namespace detail

/// a_r(n) by the finite sum.
inline SeqEntry a_seq_sum(double r, std::uint64_t n) {
    detail::require_shape("a_seq_sum", r);
    const double lambda = detail::lambda_point(r, n);
    return {n, detail::nb_partial_sum(r, lambda, n), SeqForm::sum};
}

/// a_r(n) as the normalized Beta integral I_lambda(r, n+1).
inline SeqEntry a_seq_integral(double r, std::uint64_t n) {
    detail::require_shape("a_seq_integral", r);
    const double lambda = detail::lambda_point(r, n);
    return {n, reg_inc_beta(lambda, r, static_cast<double>(n) + 1.0).value, SeqForm::integral};
}

/// Infimum of the mean-tail probability over r/(n+r+1) < p <= r/(n+r).
/// Approached as p decreases to the open left end; not attained.
inline Infimum interval_infimum(double r, std::uint64_t n) {
    return {a_seq_sum(r, n).value, false};
}

/// (r/(r+1))^r, the infimum over all p in (0, 1].
inline Infimum global_infimum(double r) {
    detail::require_shape("global_infimum", r);
    // Small integer r: r^r and (r+1)^r are exact doubles, leaving one rounding.
    if (r == std::floor(r) && r <= 15.0) {
        const double num = std::pow(r, r);
        const double den = std::pow(r + 1.0, r);
        if (den < 9007199254740992.0) return {num / den, false};
    }
    return {std::exp(r * std::log(r / (r + 1.0))), false};
}

/// a_r(n+1) > a_r(n) for n = 0 .. n_max-1; each gap must exceed the noise floor.
inline std::vector<VerifyReport> monotonicity_check(double r, std::uint64_t n_max,
                                                    double noise_floor = 1e-14) {
    detail::require_shape("monotonicity_check", r);
    if (n_max < 1) detail::fail_domain("monotonicity_check", "n_max must be at least 1");
    std::vector<double> seq(n_max + 1);
    for (std::uint64_t n = 0; n <= n_max; ++n) seq[n] = a_seq_sum(r, n).value;
    std::vector<VerifyReport> out;
    out.reserve(n_max);
    for (std::uint64_t n = 0; n < n_max; ++n) {
        VerifyReport rep = detail::compare(seq[n + 1], seq[n], noise_floor);
        rep.passed = seq[n + 1] - seq[n] > noise_floor;
        out.push_back(rep);
    }
    return out;
}

/// Sum form against integral form of a_r(n), relative tolerance `tol`.
inline VerifyReport integral_form_check(double r, std::uint64_t n, double tol = 1e-10) {
    try {
        return detail::compare(a_seq_sum(r, n).value, a_seq_integral(r, n).value, tol);
    } catch (const convergence_error& e) {
        return detail::failed_report(e.what(), tol);
    }
}

/// The improper integral over u >= (n+1+r)/r of (u-1)^n u^(-n-r-2) (r u/(n+1+r) - 1)
/// against r^r (n+1)^(n+1) / (n+r+1)^(n+r+2).
///
/// With x = 1/u and mu = r/(n+r+1) the left side is the finite integral of
/// x^(r-1) (1-x)^n (mu - x) over [0, mu], which is what gets integrated.
inline VerifyReport tail_integral_check(double r, std::uint64_t n, double tol = 1e-8) {
    detail::require_shape("tail_integral_check", r);
    if (!(tol > 0.0)) detail::fail_domain("tail_integral_check", "tol must be positive");
    const double mu = detail::lambda_point(r, n);
    const double nd = static_cast<double>(n);
    auto integrand = [=](double x) {
        return std::pow(x, r - 1.0) * std::pow(1.0 - x, nd) * (mu - x);
    };
    QuadOptions opt;
    opt.abs_tol = 0.0;
    opt.left_exponent = std::min(r, 1.0);
    try {
        const QuadResult lhs = integrate(integrand, 0.0, mu, 1e-12, opt);
        return detail::compare(lhs.value, detail::tail_closed_form(r, n), tol);
    } catch (const convergence_error& e) {
        return detail::failed_report(e.what(), tol);
    }
}

/// Strict upper bound on the integral of g(u) = (u-1)^(n+1) u^(-n-r-2) over
/// [(n+1+r)/r, (n+2+r)/r]: width 1/r times g at the left end, which is the
/// same closed form as in tail_integral_check.
inline VerifyReport slab_bound_check(double r, std::uint64_t n) {
    detail::require_shape("slab_bound_check", r);
    const double nd = static_cast<double>(n);
    const double lo = (nd + 1.0 + r) / r;
    const double hi = (nd + 2.0 + r) / r;
    QuadOptions opt;
    opt.abs_tol = 0.0;
    try {
        const QuadResult lhs =
            integrate([=](double u) { return detail::slab_integrand(r, n, u); }, lo, hi, 1e-12, opt);
        VerifyReport rep = detail::compare(lhs.value, detail::tail_closed_form(r, n), 0.0);
        rep.passed = rep.lhs < rep.rhs;
        return rep;
    } catch (const convergence_error& e) {
        return detail::failed_report(e.what(), 0.0);
    }
}

/// g(u) sampled at `points` equally spaced nodes of [(n+1+r)/r, (n+2+r)/r] must
/// strictly decrease. lhs carries the largest consecutive difference.
inline VerifyReport slab_integrand_decreasing_check(double r, std::uint64_t n,
                                                    std::size_t points = 100) {
    detail::require_shape("slab_integrand_decreasing_check", r);
    if (points < 2) detail::fail_domain("slab_integrand_decreasing_check", "need at least 2 points");
    const double nd = static_cast<double>(n);
    const double lo = (nd + 1.0 + r) / r;
    const double hi = (nd + 2.0 + r) / r;
    double worst = -std::numeric_limits<double>::infinity();
    double prev = detail::slab_integrand(r, n, lo);
    for (std::size_t i = 1; i < points; ++i) {
        const double u = i + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(i) /
                                                          static_cast<double>(points - 1);
        const double g = detail::slab_integrand(r, n, u);
        worst = std::max(worst, g - prev);
        prev = g;
    }
    VerifyReport rep = detail::compare(worst, 0.0, 0.0);
    rep.passed = worst < 0.0;
    return rep;
}

/// sum_{i=m}^{n} C(i+r-1, i) C(i, m) against C(n, m) / ((r+m) B(n+1, r)).
inline VerifyReport coefficient_identity_check(double r, std::uint64_t n, std::uint64_t m,
                                               double tol = 1e-10) {
    detail::require_shape("coefficient_identity_check", r);
    if (m < 1 || m > n) detail::fail_domain("coefficient_identity_check", "need 1 <= m <= n");
    CompensatedSum lhs;
    for (std::uint64_t i = m; i <= n; ++i) {
        const double id = static_cast<double>(i);
        lhs += std::exp(log_gen_binomial(id + r - 1.0, i) + log_gen_binomial(id, m));
    }
    const double nd = static_cast<double>(n);
    const double rhs = std::exp(log_gen_binomial(nd, m) - log_beta(nd + 1.0, r)) /
                       (r + static_cast<double>(m));
    return detail::compare(lhs.value(), rhs, tol);
}

// --- binomial counterpart -------------------------------------------------

/// The integer nearest to 2n/3 (never a tie, since 2n/3 has fractional part 0, 1/3 or 2/3).
inline std::uint64_t chvatal_nearest(std::uint64_t n) { return (2 * n + 1) / 3; }

/// Up to this n the binomial comparison is done in exact integer arithmetic.
inline constexpr std::uint64_t kChvatalExactLimit = 40;

/// q_m = P(B(n, m/n) <= m) for m = 0..n, as doubles.
inline std::vector<double> chvatal_probabilities(std::uint64_t n) {
    if (n < 1) detail::fail_domain("chvatal_probabilities", "n must be positive");
    std::vector<double> q(n + 1, 1.0);
    const double nd = static_cast<double>(n);
    for (std::uint64_t m = 1; m < n; ++m) {
        const double pm = static_cast<double>(m) / nd;
        CompensatedSum acc;
        for (std::uint64_t k = 0; k <= m; ++k) {
            const double kd = static_cast<double>(k);
            acc += std::exp(log_gen_binomial(nd, k) + kd * std::log(pm) + (nd - kd) * std::log1p(-pm));
        }
        q[m] = acc.value();
    }
    return q;
}

/// All m in 0..n minimizing P(B(n, m/n) <= m), ascending.
inline std::vector<std::uint64_t> binomial_chvatal_argmin(std::uint64_t n) {
    if (n < 2) detail::fail_domain("binomial_chvatal_argmin", "n must be at least 2");
    std::vector<std::uint64_t> argmin;
    if (n <= kChvatalExactLimit) {
        // n^n q_m = sum_{k<=m} C(n,k) m^k (n-m)^(n-k), an integer.
        std::vector<BigInt> binom(n + 1);
        binom[0] = 1;
        for (std::uint64_t k = 1; k <= n; ++k) binom[k] = binom[k - 1] * (n - k + 1) / k;
        BigInt best = -1;
        for (std::uint64_t m = 0; m <= n; ++m) {
            BigInt total = 0;
            for (std::uint64_t k = 0; k <= m; ++k) {
                total += binom[k] * boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(k)) *
                         boost::multiprecision::pow(BigInt(n - m), static_cast<unsigned>(n - k));
            }
            if (best < 0 || total < best) {
                best = total;
                argmin.assign(1, m);
            } else if (total == best) {
                argmin.push_back(m);
            }
        }
        return argmin;
    }
    const std::vector<double> q = chvatal_probabilities(n);
    const double best = *std::min_element(q.begin(), q.end());
    for (std::uint64_t m = 0; m <= n; ++m) {
        if (q[m] == best) argmin.push_back(m);
    }
    return argmin;
}

/// Report for one n: passed iff the argmin set is exactly {nearest integer to 2n/3}.
/// lhs is the (first) argmin, rhs is 2n/3.
inline VerifyReport binomial_chvatal_check(std::uint64_t n) {
    const std::vector<std::uint64_t> argmin = binomial_chvatal_argmin(n);
    const std::uint64_t nearest = chvatal_nearest(n);
    VerifyReport rep = detail::compare(static_cast<double>(argmin.front()),
                                       2.0 * static_cast<double>(n) / 3.0, 0.5);
    rep.passed = std::all_of(argmin.begin(), argmin.end(),
                             [&](std::uint64_t m) { return m == nearest; });
    return rep;
}

}  // namespace nbtail
