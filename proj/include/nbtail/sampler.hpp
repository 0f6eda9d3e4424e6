#pragma once

// Seeded NB(r, p) variates through the Gamma-Poisson mixture: draw
// G ~ Gamma(shape r, scale (1-p)/p), then X ~ Poisson(G).
//
// Every stage is written out here (xoshiro256** seeded by splitmix64,
// Marsaglia polar normals, Marsaglia-Tsang gamma, inversion / PTRS Poisson)
// so a fixed seed gives the same stream on any platform and standard library.

#include <array>
#include <cmath>
#include <cstdint>

#include "nbtail/errors.hpp"
#include "nbtail/specfun.hpp"

namespace nbtail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** 1.0.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() {
        double u = 0.0;
        do u = uniform();
        while (u == 0.0);
        return u;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> s_{};
};

/// Standard normal by the Marsaglia polar method (the spare value is cached).
class NormalSource {
public:
    double operator()(Xoshiro256& rng) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        double v = 0.0;
        double s = 0.0;
        do {
            u = 2.0 * rng.uniform() - 1.0;
            v = 2.0 * rng.uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Gamma(shape, scale). Marsaglia-Tsang squeeze for shape >= 1; for shape < 1
/// a Gamma(shape + 1) draw is multiplied by U^(1/shape).
inline double gamma_variate(Xoshiro256& rng, NormalSource& normal, double shape, double scale) {
    if (shape < 1.0) {
        const double boost = std::pow(rng.uniform_open(), 1.0 / shape);
        return gamma_variate(rng, normal, shape + 1.0, scale) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

/// Poisson(mean): inversion below mean 10, Hoermann's PTRS transformed rejection above.
inline std::uint64_t poisson_variate(Xoshiro256& rng, double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
        const double u = rng.uniform();
        double prob = std::exp(-mean);
        double cdf = prob;
        std::uint64_t k = 0;
        while (u > cdf && k < 1000) {
            ++k;
            prob *= mean / static_cast<double>(k);
            cdf += prob;
        }
        return k;
    }
    const double slam = std::sqrt(mean);
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform_open();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b);
        const double rhs = -mean + kf * log_mean - log_gamma(kf + 1.0);
        if (lhs <= rhs) return static_cast<std::uint64_t>(kf);
    }
}

/// A seeded stream of NB(r, p) variates. Single owner: not safe to advance
/// from two threads; use independently seeded streams instead.
class SampleStream {
public:
    SampleStream(double r, double p, std::uint64_t seed) : r_(r), p_(p), seed_(seed), rng_(seed) {
        if (!(r > 0.0) || !std::isfinite(r)) detail::fail_domain("SampleStream", "r must be positive and finite");
        if (!(p > 0.0 && p <= 1.0)) detail::fail_domain("SampleStream", "p must lie in (0, 1]");
    }

    [[nodiscard]] double r() const { return r_; }
    [[nodiscard]] double p() const { return p_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    std::uint64_t next() {
        if (p_ == 1.0) return 0;
        const double g = gamma_variate(rng_, normal_, r_, (1.0 - p_) / p_);
        return poisson_variate(rng_, g);
    }

private:
    double r_;
    double p_;
    std::uint64_t seed_;
    Xoshiro256 rng_;
    NormalSource normal_;
};

inline std::uint64_t nb_sample(SampleStream& stream) { return stream.next(); }

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double sample_mean = 0.0;
};

/// Fraction of `draws` variates that are <= n, with its binomial standard error.
inline McEstimate mc_cdf_estimate(double r, double p, std::uint64_t n, std::uint64_t draws,
                                  std::uint64_t seed) {
    if (draws < 1) detail::fail_domain("mc_cdf_estimate", "draws must be at least 1");
    SampleStream stream(r, p, seed);
    std::uint64_t hits = 0;
    double total = 0.0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const std::uint64_t x = stream.next();
        hits += x <= n ? 1 : 0;
        total += static_cast<double>(x);
    }
    const double dn = static_cast<double>(draws);
    const double est = static_cast<double>(hits) / dn;
    return {est, std::sqrt(est * (1.0 - est) / dn), total / dn};
}

}  // namespace nbtail
