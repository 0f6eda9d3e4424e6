#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace nbtail {

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }

    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Compensated sum of non-negative terms taken largest-first.
inline double sum_largest_first(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end(), std::greater<>());
    CompensatedSum acc;
    for (double t : terms) acc += t;
    return acc.value();
}

/// log(sum(exp(x_i))) with the maximum factored out.
inline double log_sum_exp(std::span<const double> xs) {
    if (xs.empty()) return -INFINITY;
    const double hi = *std::max_element(xs.begin(), xs.end());
    if (!std::isfinite(hi)) return hi;
    std::vector<double> scaled;
    scaled.reserve(xs.size());
    for (double x : xs) scaled.push_back(std::exp(x - hi));
    return hi + std::log(sum_largest_first(std::move(scaled)));
}

}  // namespace nbtail
