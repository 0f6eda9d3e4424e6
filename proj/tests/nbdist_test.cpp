#include "nbtail/nbdist.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

#include "nbtail/chvatal.hpp"

namespace {

using namespace nbtail;
using Float50 = boost::multiprecision::cpp_bin_float_50;

TEST(NBParams, Validation) {
    EXPECT_NO_THROW(NBParams(0.5, 1.0));
    EXPECT_THROW(NBParams(0.0, 0.5), domain_error);
    EXPECT_THROW(NBParams(-1.0, 0.5), domain_error);
    EXPECT_THROW(NBParams(1.0, 0.0), domain_error);
    EXPECT_THROW(NBParams(1.0, 1.5), domain_error);
    EXPECT_THROW(NBParams(INFINITY, 0.5), domain_error);
    EXPECT_THROW(NBParams(1.0, std::nan("")), domain_error);
}

TEST(NbPmf, Examples) {
    EXPECT_EQ(nb_pmf({3.3, 1.0}, 0).value, 1.0);
    EXPECT_EQ(nb_pmf({3.3, 1.0}, 4).value, 0.0);
    EXPECT_NEAR(nb_pmf({2.0, 0.5}, 1).value, 0.25, 1e-15);
    EXPECT_NEAR(nb_pmf({1.0, 0.5}, 3).value, 0.0625, 1e-15);
}

TEST(NbPmf, Normalization) {
    for (double r : {0.3, 1.0, 4.5}) {
        for (double p : {0.2, 0.6, 0.95}) {
            const NBParams params(r, p);
            double total = 0.0;
            for (std::uint64_t l = 0;; ++l) {
                total += nb_pmf(params, l).value;
                // Past the mean the terms decay at least geometrically.
                if (nb_pmf(params, l).value < 1e-17 && l > nb_mean(params)) break;
            }
            EXPECT_NEAR(total, 1.0, 1e-12) << r << " " << p;
        }
    }
}

TEST(NbCdf, SumExamples) {
    EXPECT_EQ(nb_cdf_sum({2.0, 1.0}, 7).value, 1.0);
    EXPECT_NEAR(nb_cdf_sum({1.0, 0.5}, 1).value, 0.75, 1e-16);
    EXPECT_NEAR(nb_cdf_sum({2.0, 0.5}, 0).value, 0.25, 1e-16);
    EXPECT_EQ(nb_cdf_sum({2.0, 0.5}, 0).path, EvalPath::direct_sum);
}

TEST(NbCdf, BetaExamples) {
    EXPECT_EQ(nb_cdf_beta({2.0, 1.0}, 3).value, 1.0);
    EXPECT_NEAR(nb_cdf_beta({1.0, 0.5}, 1).value, 0.75, 1e-15);
    EXPECT_NEAR(nb_cdf_beta({2.5, 0.3}, 4).value, nb_cdf_sum({2.5, 0.3}, 4).value, 1e-12);
    EXPECT_EQ(nb_cdf_beta({2.5, 0.3}, 4).path, EvalPath::incomplete_beta);
}

TEST(NbCdf, PathEquivalence) {
    for (double r : {0.3, 1.0, 2.0, 2.7, 5.0, 10.0}) {
        for (int i = 1; i <= 19; ++i) {
            const NBParams params(r, 0.05 * i);
            for (std::uint64_t n = 0; n <= 100; ++n) {
                EXPECT_NEAR(nb_cdf_sum(params, n).value, nb_cdf_beta(params, n).value, 1e-12)
                    << r << " " << params.p() << " " << n;
            }
        }
    }
}

TEST(NbCdf, PartialSumsAgreeWithPmf) {
    // The ratio recurrence against independent log-domain pmf terms.
    for (double r : {0.4, 3.0, 25.0}) {
        for (double p : {0.1, 0.5, 0.9}) {
            const NBParams params(r, p);
            double acc = 0.0;
            for (std::uint64_t n = 0; n <= 200; ++n) {
                acc += nb_pmf(params, n).value;
                EXPECT_NEAR(nb_cdf_sum(params, n).value, acc, 1e-12 * std::max(acc, 1e-300) + 1e-300);
            }
        }
    }
}

TEST(NbCdf, UnderflowingFirstTerm) {
    // p^r = 0.02^200 ~ 1e-340 is not representable; the anchor moves to the mode.
    const NBParams params(200.0, 0.02);
    for (std::uint64_t n : {8000u, 9800u, 11000u, 14000u}) {
        const double beta_path = nb_cdf_beta(params, n).value;
        EXPECT_NEAR(nb_cdf_sum(params, n).value, beta_path, 1e-10 * beta_path) << n;
    }
    EXPECT_LT(nb_cdf_sum(params, 3000).value, 1e-30);
    EXPECT_GT(nb_cdf_sum(params, 3000).value, 0.0);
}

TEST(NbMean, Examples) {
    EXPECT_EQ(nb_mean({4.0, 1.0}), 0.0);
    EXPECT_DOUBLE_EQ(nb_mean({2.0, 0.5}), 2.0);
    EXPECT_DOUBLE_EQ(nb_mean({1.0, 0.4}), 1.5);
}

TEST(MeanIntervalIndex, Examples) {
    EXPECT_EQ(mean_interval_index({1.0, 1.0}).n, 0u);
    EXPECT_EQ(mean_interval_index({2.0, 0.5}).n, 2u);
    EXPECT_EQ(mean_interval_index({1.0, 0.4}).n, 1u);
}

TEST(MeanIntervalIndex, ClosedRightEndpoint) {
    // p = r/(n+r) exactly belongs to interval n.
    EXPECT_EQ(mean_interval_index({1.0, 0.5}).n, 1u);
    EXPECT_EQ(mean_interval_index({3.0, 0.75}).n, 1u);
    EXPECT_EQ(mean_interval_index({2.0, 0.25}).n, 6u);
    EXPECT_EQ(mean_interval_index(Rational(1), Rational(1, 5)).n, 4u);
    EXPECT_EQ(mean_interval_index(Rational(7, 2), Rational(7, 17)).n, 5u);
    // The double nearest 1/5 is slightly larger than 1/5, so it sits in n = 3,
    // even though the naive floor(0.8 / 0.2) gives 4.
    EXPECT_EQ(mean_interval_index({1.0, 0.2}).n, 3u);
}

TEST(MeanIntervalIndex, TinyProbability) {
    EXPECT_EQ(mean_interval_index({1.0, 1e-12}).n,
              floor_nonneg(Rational(1) * (1 - exact_rational(1e-12)) / exact_rational(1e-12))
                  .convert_to<std::uint64_t>());
}

TEST(MeanIntervalIndex, AgreesWithExtendedPrecisionFloor) {
    std::mt19937_64 gen(12345);
    for (double r : {0.3, 1.0, 2.5, 7.0, 31.4}) {
        for (std::uint64_t n = 0; n <= 200; ++n) {
            const double lo = r / (static_cast<double>(n) + r + 1.0);
            const double hi = r / (static_cast<double>(n) + r);
            std::uniform_real_distribution<double> inside(lo, hi);
            for (int t = 0; t < 5; ++t) {
                const double p = inside(gen);
                const Float50 quotient = Float50(r) * (1 - Float50(p)) / Float50(p);
                const double q = std::abs(quotient.convert_to<double>() - std::round(quotient.convert_to<double>()));
                if (q < 1e-9) continue;  // too close to a boundary to be "strictly inside"
                const auto want = static_cast<std::uint64_t>(floor(quotient).convert_to<double>());
                EXPECT_EQ(mean_interval_index({r, p}).n, want) << r << " " << p;
                EXPECT_EQ(want, n);
            }
        }
    }
}

TEST(MeanTailProb, Examples) {
    EXPECT_EQ(mean_tail_prob({2.0, 1.0}).value, 1.0);
    EXPECT_NEAR(mean_tail_prob({1.0, 0.5}).value, 0.75, 1e-16);
    EXPECT_NEAR(mean_tail_prob({1.0, 0.6}).value, 0.6, 1e-16);
}

TEST(MeanTailProb, StrictlyAboveInfimum) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unit(1e-4, 1.0);
    for (double r : {0.2, 0.5, 1.0, 3.0, 12.0}) {
        const double inf = global_infimum(r).value;
        for (int i = 0; i < 2000; ++i) {
            const double p = unit(gen);
            EXPECT_GT(mean_tail_prob({r, p}).value, inf) << r << " " << p;
        }
    }
}

TEST(Pascal, PmfExamples) {
    EXPECT_NEAR(pascal_pmf(1.0, 0.5, 1).value, 0.5, 1e-16);
    EXPECT_NEAR(pascal_pmf(2.0, 0.5, 2).value, 0.25, 1e-16);
    EXPECT_EQ(pascal_pmf(4.0, 1.0, 4).value, 1.0);
    EXPECT_EQ(pascal_pmf(4.0, 1.0, 5).value, 0.0);
    EXPECT_THROW(pascal_pmf(2.0, 0.5, 1), domain_error);
    EXPECT_THROW(pascal_pmf(2.5, 0.5, 3), domain_error);
    EXPECT_THROW(pascal_pmf(0.0, 0.5, 3), domain_error);
}

TEST(Pascal, ShiftedNegativeBinomial) {
    for (double r : {1.0, 2.0, 6.0}) {
        for (double p : {0.15, 0.5, 0.9}) {
            for (std::uint64_t l = 0; l < 30; ++l) {
                const double a = pascal_pmf(r, p, l + static_cast<std::uint64_t>(r)).value;
                const double b = nb_pmf({r, p}, l).value;
                EXPECT_NEAR(a, b, 1e-14 * b);
            }
        }
    }
}

TEST(Pascal, MeanTailMatches) {
    EXPECT_EQ(pascal_mean_tail(1.0, 1.0).value, 1.0);
    EXPECT_NEAR(pascal_mean_tail(2.0, 0.5).value, mean_tail_prob({2.0, 0.5}).value, 1e-15);
    EXPECT_NEAR(pascal_mean_tail(3.0, 0.75).value, mean_tail_prob({3.0, 0.75}).value, 1e-15);
    EXPECT_THROW(pascal_mean_tail(1.5, 0.5), domain_error);
}

}  // namespace
