#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "hawkes/simd/kernels.hpp"

using namespace hawkes;
using simd::Isa;

namespace {

// Sizes around every vector width and tail length, plus a few long ones.
std::vector<std::size_t> sizes() {
    std::vector<std::size_t> s;
    for (std::size_t n = 0; n <= 40; ++n) s.push_back(n);
    for (std::size_t n : {63u, 64u, 65u, 255u, 1000u, 4097u, 100000u}) s.push_back(n);
    return s;
}

std::vector<double> uniform(std::mt19937_64& gen, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(gen);
    return v;
}

// Reference sums in long double, independent of both variants.
long double ref_exp_decay(const std::vector<double>& t, double at, double beta) {
    long double s = 0;
    for (double x : t) s += std::exp(-static_cast<long double>(beta) * (at - x));
    return s;
}

class SimdEquivalence : public ::testing::Test {
protected:
    void SetUp() override {
        if (!simd::isa_available(Isa::avx2)) GTEST_SKIP() << "AVX2/FMA not available on this CPU";
    }
    std::mt19937_64 gen{99};
};

}  // namespace

TEST(SimdDispatch, ScalarAlwaysAvailable) {
    EXPECT_TRUE(simd::isa_available(Isa::scalar));
    EXPECT_EQ(simd::isa_name(Isa::scalar), "scalar");
    EXPECT_EQ(simd::isa_name(Isa::avx2), "avx2");
    const Isa active = simd::active_isa();
    EXPECT_TRUE(simd::isa_available(active));
}

TEST(SimdDispatch, UnavailableIsaThrows) {
    if (simd::isa_available(Isa::avx2)) GTEST_SKIP() << "AVX2 present";
    const std::vector<double> a{1.0};
    EXPECT_THROW((void)simd::sum(Isa::avx2, a), std::runtime_error);
}

TEST(SimdDispatch, MismatchedLengthsRejected) {
    const std::vector<double> a{1.0, 2.0}, b{1.0};
    EXPECT_THROW((void)simd::dot(a, b), std::invalid_argument);
    EXPECT_THROW((void)simd::dot_reversed(a, b), std::invalid_argument);
}

TEST_F(SimdEquivalence, SumExpDecay) {
    for (std::size_t n : sizes()) {
        auto t = uniform(gen, n, 0.0, 50.0);
        std::sort(t.begin(), t.end());
        for (double beta : {0.01, 1.0, 2.0, 37.0}) {
            const double a = simd::sum_exp_decay(Isa::scalar, t, 50.0, beta);
            const double b = simd::sum_exp_decay(Isa::avx2, t, 50.0, beta);
            const double ref = static_cast<double>(ref_exp_decay(t, 50.0, beta));
            const double tol = 1e-14 * std::max(1.0, ref) + 1e-300;
            EXPECT_NEAR(a, ref, tol) << "n=" << n << " beta=" << beta;
            EXPECT_NEAR(b, ref, tol) << "n=" << n << " beta=" << beta;
        }
    }
}

TEST_F(SimdEquivalence, SumExpDecayExtremeArguments) {
    // arguments far below the underflow threshold, and exactly zero
    const std::vector<double> t{0.0, 1.0, 999.0, 1000.0, 500.0, 10.0, 999.999, 1000.0 - 1e-12};
    for (double beta : {1.0, 5.0, 800.0}) {
        EXPECT_NEAR(simd::sum_exp_decay(Isa::avx2, t, 1000.0, beta), simd::sum_exp_decay(Isa::scalar, t, 1000.0, beta),
                    1e-14 * simd::sum_exp_decay(Isa::scalar, t, 1000.0, beta));
    }
}

TEST_F(SimdEquivalence, SumPowerDecay) {
    for (std::size_t n : sizes()) {
        auto t = uniform(gen, n, 0.0, 100.0);
        std::sort(t.begin(), t.end());
        const auto w = uniform(gen, n, 0.1, 5.0);
        for (double c : {0.01, 1.0}) {
            for (double p : {1.1, 1.5, 3.0}) {
                long double ref = 0, ref_w = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const long double term = std::pow(1.0L + (100.0L - t[i]) / c, -static_cast<long double>(p));
                    ref += term;
                    ref_w += w[i] * term;
                }
                const double a = simd::sum_power_decay(Isa::avx2, t, {}, 100.0, c, p);
                const double b = simd::sum_power_decay(Isa::scalar, t, {}, 100.0, c, p);
                EXPECT_NEAR(a, static_cast<double>(ref), 1e-13 * std::max(1.0L, ref)) << n << " " << c << " " << p;
                EXPECT_NEAR(b, static_cast<double>(ref), 1e-13 * std::max(1.0L, ref));
                const double aw = simd::sum_power_decay(Isa::avx2, t, w, 100.0, c, p);
                const double bw = simd::sum_power_decay(Isa::scalar, t, w, 100.0, c, p);
                EXPECT_NEAR(aw, bw, 1e-13 * std::max(1.0L, ref_w));
            }
        }
    }
}

TEST_F(SimdEquivalence, DotAndReversedDot) {
    for (std::size_t n : sizes()) {
        const auto a = uniform(gen, n, -1.0, 1.0);
        const auto b = uniform(gen, n, -1.0, 1.0);
        long double ref = 0, ref_rev = 0, abs_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ref += static_cast<long double>(a[i]) * b[i];
            ref_rev += static_cast<long double>(a[i]) * b[n - 1 - i];
            abs_sum += std::abs(a[i] * b[i]);
        }
        const double tol = 1e-15 * static_cast<double>(abs_sum) + 1e-300;
        EXPECT_NEAR(simd::dot(Isa::avx2, a, b), static_cast<double>(ref), 4 * tol) << n;
        EXPECT_NEAR(simd::dot(Isa::scalar, a, b), static_cast<double>(ref), 4 * tol) << n;
        EXPECT_NEAR(simd::dot_reversed(Isa::avx2, a, b), static_cast<double>(ref_rev), 4 * tol) << n;
        EXPECT_NEAR(simd::dot_reversed(Isa::scalar, a, b), static_cast<double>(ref_rev), 4 * tol) << n;
    }
}

TEST_F(SimdEquivalence, SumsAndLogs) {
    for (std::size_t n : sizes()) {
        const auto a = uniform(gen, n, 1e-3, 10.0);
        long double s = 0, s2 = 0, sl = 0;
        for (double x : a) {
            s += x;
            s2 += static_cast<long double>(x) * x;
            sl += std::log(static_cast<long double>(x));
        }
        for (Isa isa : {Isa::scalar, Isa::avx2}) {
            EXPECT_NEAR(simd::sum(isa, a), static_cast<double>(s), 1e-14 * std::max(1.0L, s)) << n;
            EXPECT_NEAR(simd::sum_squares(isa, a), static_cast<double>(s2), 1e-14 * std::max(1.0L, s2)) << n;
            long double abs_log = 0;
            for (double x : a) abs_log += std::abs(std::log(x));
            EXPECT_NEAR(simd::sum_log(isa, a), static_cast<double>(sl), 1e-14 * std::max(1.0L, abs_log)) << n;
        }
    }
}

TEST_F(SimdEquivalence, LogOverWideRange) {
    std::vector<double> a;
    for (double x = 1e-300; x < 1e300; x *= 7.3) a.push_back(x);
    a.push_back(1.0);
    a.push_back(0.5);
    a.push_back(2.0);
    for (double x : a) {
        const std::vector<double> one{x};
        EXPECT_NEAR(simd::sum_log(Isa::avx2, one), std::log(x), 2e-15 * std::max(1.0, std::abs(std::log(x)))) << x;
    }
}

TEST_F(SimdEquivalence, DispatchedMatchesSelectedIsa) {
    const auto a = uniform(gen, 1001, 0.5, 1.5);
    const Isa isa = simd::active_isa();
    EXPECT_EQ(simd::sum(a), simd::sum(isa, a));
    EXPECT_EQ(simd::sum_log(a), simd::sum_log(isa, a));
    EXPECT_EQ(simd::sum_exp_decay(a, 2.0, 1.0), simd::sum_exp_decay(isa, a, 2.0, 1.0));
}
