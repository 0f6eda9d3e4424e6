#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration on finite intervals,
// with an optional power substitution for integrable endpoint singularities
// and a reciprocal map for tails [a, inf).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "nbtail/errors.hpp"

namespace nbtail {

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
    std::size_t evaluations = 0;
};

struct QuadOptions {
    /// Absolute error floor; negative means "use tol", which makes tol act as
    /// a relative tolerance for |value| > 1 and an absolute one below.
    double abs_tol = -1.0;
    /// Exponent alpha when the integrand behaves like (x - a)^(alpha - 1) at
    /// the left end. alpha != 1 triggers x = a + t^(1/alpha) on the left panel.
    double left_exponent = 1.0;
    std::size_t max_intervals = std::size_t{1} << 16;
};

namespace detail {

// Kronrod abscissae/weights (QUADPACK qk15) and the embedded Gauss weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline std::string format_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod_15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double res_abs = std::abs(res_k);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double pair = f1[j] + f2[j];
        res_k += kWgk[j] * pair;
        res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        // Gauss nodes are the odd-indexed Kronrod nodes.
        if (j % 2 == 1) res_g += kWg[j / 2] * pair;
    }
    const double mean = 0.5 * res_k;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double scale = std::abs(half);
    const double value = res_k * half;
    res_abs *= scale;
    res_asc *= scale;
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * res_abs, err);
    }
    return {a, b, value, err};
}

template <class F>
QuadResult adaptive_gk(const F& f, double a, double b, double rel_tol, double abs_tol,
                       std::size_t max_intervals) {
    std::priority_queue<Panel> heap;
    Panel first = gauss_kronrod_15(f, a, b);
    std::size_t evals = 15;
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    auto converged = [&] { return total_err <= std::max(rel_tol * std::abs(total), abs_tol); };
    while (!converged()) {
        if (heap.size() >= max_intervals) {
            throw convergence_error("integrate: subdivision budget of " +
                                    std::to_string(max_intervals) +
                                    " intervals exhausted (estimated error " +
                                    format_sci(total_err) + ")");
        }
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw convergence_error("integrate: interval collapsed below machine resolution");
        }
        const Panel left = gauss_kronrod_15(f, worst.a, mid);
        const Panel right = gauss_kronrod_15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    double value = 0.0;
    double err = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {value, err, evals};
}

}  // namespace detail

/// Integral of f over [a, b] to max(tol * |value|, abs_tol).
///
/// The relative part is raised to 50 eps at least: the per-panel error
/// estimate never drops below that roundoff floor.
template <class F>
QuadResult integrate(const F& f, double a, double b, double tol, const QuadOptions& opt = {}) {
    if (!(b >= a) || !std::isfinite(a) || !std::isfinite(b)) {
        detail::fail_domain("integrate", "need finite a <= b");
    }
    if (!(tol > 0.0)) detail::fail_domain("integrate", "tol must be positive");
    if (!(opt.left_exponent > 0.0)) detail::fail_domain("integrate", "left_exponent must be positive");
    const double abs_tol = opt.abs_tol < 0.0 ? tol : opt.abs_tol;
    tol = std::max(tol, 50.0 * std::numeric_limits<double>::epsilon());
    if (a == b) return {0.0, 0.0, 0};

    if (opt.left_exponent == 1.0) {
        return detail::adaptive_gk(f, a, b, tol, abs_tol, opt.max_intervals);
    }

    // Left panel [a, c] under x = a + t^(1/alpha): dx = (1/alpha) t^(1/alpha - 1) dt,
    // which cancels the (x - a)^(alpha - 1) factor.
    const double alpha = opt.left_exponent;
    const double c = a + 0.5 * (b - a);
    const double t_max = std::pow(c - a, alpha);
    auto mapped = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double h = std::pow(t, 1.0 / alpha);
        const double jac = std::pow(t, 1.0 / alpha - 1.0) / alpha;
        const double v = f(a + h) * jac;
        return std::isfinite(v) ? v : 0.0;
    };
    const QuadResult left = detail::adaptive_gk(mapped, 0.0, t_max, tol, 0.5 * abs_tol,
                                                opt.max_intervals / 2);
    const QuadResult right =
        detail::adaptive_gk(f, c, b, tol, 0.5 * abs_tol, opt.max_intervals / 2);
    return {left.value + right.value, left.est_error + right.est_error,
            left.evaluations + right.evaluations};
}

/// Integral of f over [a, inf) via x = 1/u: the integral of f(1/x) / x^2 over [0, 1/a].
template <class F>
QuadResult integrate_reciprocal_tail(const F& f, double a, double tol, const QuadOptions& opt = {}) {
    if (!(a > 0.0) || !std::isfinite(a)) detail::fail_domain("integrate_reciprocal_tail", "a must be positive");
    auto mapped = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double v = f(1.0 / x) / (x * x);
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate(mapped, 0.0, 1.0 / a, tol, opt);
}

}  // namespace nbtail
