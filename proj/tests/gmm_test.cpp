#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hawkes/core/error.hpp"
#include "hawkes/gmm/moments.hpp"
#include "hawkes/sim/simulate.hpp"
#include "oracles.hpp"
#include "stats.hpp"

using namespace hawkes;

namespace {

const HawkesModel kBase{0.5, std::nullopt, ExpKernel{1.0, 2.0}};

// Bin moments from the stationary covariance density of the exponential model,
// c(u) = L alpha (2 beta - alpha) / (2 kappa) e^{-kappa |u|} with L = lambda beta / kappa,
// integrated numerically over the bin pair.
struct Oracle {
    double w1, w2, w3;
};

Oracle covariance_oracle(double lambda, double alpha, double beta, double tau, double gap) {
    const double kappa = beta - alpha;
    const double L = lambda * beta / kappa;
    const auto c = [&](double u) { return L * alpha * (2.0 * beta - alpha) / (2.0 * kappa) * std::exp(-kappa * std::abs(u)); };
    // Var N(tau) = L tau + int_0^tau int_0^tau c(s - t) ds dt
    const double same = oracle::simpson(
        [&](double t) {
            return oracle::simpson([&](double s) { return c(s - t); }, 0.0, t, 1e-14, 1e-12) +
                   oracle::simpson([&](double s) { return c(s - t); }, t, tau, 1e-14, 1e-12);
        },
        0.0, tau, 1e-13, 1e-11);
    const double cross = oracle::simpson(
        [&](double t) { return oracle::simpson([&](double s) { return c(s - t); }, tau + gap, 2.0 * tau + gap, 1e-14, 1e-12); },
        0.0, tau, 1e-13, 1e-11);
    return {L * tau, L * tau + same, cross};
}

double criterion(const MomentTriple& m, const MomentTriple& w) {
    return std::pow(m.m1 - w.m1, 2) + std::pow(m.m2 - w.m2, 2) + std::pow(m.m3 - w.m3, 2);
}

}  // namespace

TEST(BinCounts, SmallExample) {
    const auto b = bin_counts(EventSequence({0.5, 1.5, 1.6}, 2.0), 1.0, 0);
    EXPECT_EQ(b.counts, (std::vector<std::uint64_t>{1, 2}));
    EXPECT_FALSE(b.partial_bin_dropped);
}

TEST(BinCounts, EmptyRecord) {
    const auto b = bin_counts(EventSequence::empty(4.0), 2.0, 0);
    EXPECT_EQ(b.counts, (std::vector<std::uint64_t>{0, 0}));
}

TEST(BinCounts, RightClosedBinsAndTimeZero) {
    const auto b = bin_counts(EventSequence({0.0, 1.0, 2.0, 2.5}, 3.0), 1.0, 0);
    EXPECT_EQ(b.counts, (std::vector<std::uint64_t>{2, 1, 1}));
}

TEST(BinCounts, LongRecordBinCountAndLag) {
    Rng rng(1);
    const auto ev = simulate_exact_exp(kBase, 4000.0, rng);
    const auto b = bin_counts(ev, 2.0, 0, 1000.0);
    EXPECT_EQ(b.counts.size(), 2000u);
    EXPECT_EQ(b.lag(), 500u);
    std::uint64_t total = 0;
    for (auto k : b.counts) total += k;
    EXPECT_EQ(total, ev.size());
}

TEST(BinCounts, DiscardAndPartialBin) {
    const auto b = bin_counts(EventSequence({0.5, 1.5, 2.5, 3.5, 4.2}, 4.5), 1.0, 1);
    EXPECT_EQ(b.counts, (std::vector<std::uint64_t>{1, 1, 1}));
    EXPECT_EQ(b.n_discarded, 1u);
    EXPECT_TRUE(b.partial_bin_dropped);
    EXPECT_EQ(default_discard(2000), 200u);
    EXPECT_EQ(default_discard(9), 0u);
}

TEST(BinCounts, RejectsBadWidth) {
    EXPECT_THROW((void)bin_counts(EventSequence::empty(4.0), 0.0, 0), ConfigError);
    EXPECT_THROW((void)bin_counts(EventSequence::empty(4.0), -1.0, 0), ConfigError);
}

TEST(EmpiricalMoments, ConstantCounts) {
    const auto m = empirical_moments(std::vector<std::uint64_t>(50, 3), 2);
    EXPECT_DOUBLE_EQ(m.m1, 3.0);
    EXPECT_DOUBLE_EQ(m.m2, 0.0);
    EXPECT_DOUBLE_EQ(m.m3, 0.0);
    EXPECT_EQ(m.kind, MomentTriple::Kind::empirical);
}

TEST(EmpiricalMoments, HandExample) {
    const auto m = empirical_moments({1, 2, 3, 4}, 1);
    EXPECT_DOUBLE_EQ(m.m1, 2.5);
    EXPECT_DOUBLE_EQ(m.m2, 1.25);
    // mean of products (2 + 6 + 12) / 3 minus window means 2 and 3
    EXPECT_NEAR(m.m3, 20.0 / 3.0 - 2.0 * 3.0, 1e-14);
}

TEST(EmpiricalMoments, TooFewBinsForLag) {
    EXPECT_THROW((void)empirical_moments({1, 2, 3}, 2), ConfigError);
}

TEST(EmpiricalMoments, PoissonDispersion) {
    std::mt19937_64 gen(2);
    std::poisson_distribution<int> pois(1.7);
    std::vector<std::uint64_t> k(100000);
    for (auto& x : k) x = static_cast<std::uint64_t>(pois(gen));
    const auto m = empirical_moments(k, 3);
    // se of the sample variance for Poisson(mu) is about sqrt((mu + 2 mu^2) / n)
    const double n = static_cast<double>(k.size());
    EXPECT_NEAR(m.m2 / m.m1, 1.0, 3.0 * std::sqrt((1.7 + 2.0 * 1.7 * 1.7) / n) / 1.7 + 3.0 * std::sqrt(1.7 / n) / 1.7);
    EXPECT_NEAR(m.m3, 0.0, 3.0 * 1.7 / std::sqrt(n));
}

TEST(TheoreticalMoments, PoissonReductionIsExact) {
    for (double tau : {0.5, 1.0, 3.0}) {
        const auto w = theoretical_moments(1.3, 0.0, 2.0, tau, 4.0);
        EXPECT_EQ(w.m1, 1.3 * tau);
        EXPECT_EQ(w.m2, 1.3 * tau);
        EXPECT_EQ(w.m3, 0.0);
    }
}

TEST(TheoreticalMoments, MatchCovarianceDensityOracle) {
    struct Case {
        double lambda, alpha, beta, tau, gap;
    };
    for (const Case& c : {Case{0.5, 1.0, 2.0, 1.0, 0.0}, Case{0.5, 1.0, 2.0, 1.0, 4.0}, Case{1.2, 0.3, 0.5, 2.5, 1.0},
                          Case{0.1, 4.0, 5.0, 0.2, 0.7}}) {
        const auto w = theoretical_moments(c.lambda, c.alpha, c.beta, c.tau, c.gap);
        const auto o = covariance_oracle(c.lambda, c.alpha, c.beta, c.tau, c.gap);
        EXPECT_NEAR(w.m1, o.w1, 1e-12 * o.w1);
        EXPECT_NEAR(w.m2, o.w2, 1e-8 * o.w2);
        EXPECT_NEAR(w.m3, o.w3, 1e-8 * std::abs(o.w3) + 1e-14);
    }
    EXPECT_DOUBLE_EQ(theoretical_moments(0.5, 1.0, 2.0, 1.0, 0.0).m1, 1.0);
}

TEST(TheoreticalMoments, LagCovarianceDecaysMonotonically) {
    double prev = theoretical_moments(0.5, 1.0, 2.0, 1.0, 0.0).m3;
    for (double d = 0.5; d <= 30.0; d += 0.5) {
        const double w3 = theoretical_moments(0.5, 1.0, 2.0, 1.0, d).m3;
        EXPECT_LT(w3, prev);
        EXPECT_NEAR(w3 / prev, std::exp(-0.5), 1e-12);
        prev = w3;
    }
    EXPECT_LT(prev, 1e-6);
}

TEST(TheoreticalMoments, OverdispersionAndLinearity) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double beta = 0.1 + 10.0 * u(gen);
        const double alpha = beta * (0.01 + 0.98 * u(gen));
        const double lambda = 0.01 + 5.0 * u(gen);
        const double tau = 0.01 + 10.0 * u(gen);
        const auto w = theoretical_moments(lambda, alpha, beta, tau, u(gen));
        EXPECT_GE(w.m2, w.m1);
        EXPECT_GE(w.m3, 0.0);
        EXPECT_NEAR(theoretical_moments(2.0 * lambda, alpha, beta, tau, 0.0).m1, 2.0 * w.m1, 1e-12 * w.m1);
        EXPECT_NEAR(theoretical_moments(lambda, alpha, beta, 3.0 * tau, 0.0).m1, 3.0 * w.m1, 1e-12 * w.m1);
    }
}

TEST(TheoreticalMoments, RejectsNonStationary) {
    EXPECT_THROW((void)theoretical_moments(0.5, 2.0, 2.0, 1.0, 0.0), ConfigError);
    EXPECT_THROW((void)theoretical_moments(0.5, 3.0, 2.0, 1.0, 0.0), ConfigError);
    EXPECT_THROW((void)theoretical_moments(0.5, 1.0, 2.0, 0.0, 0.0), ConfigError);
}

TEST(MonteCarlo, BinMomentsMatchTheory) {
    Rng rng(4);
    const auto ev = simulate_exact_exp(kBase, 1e6, rng);
    const auto bins = bin_counts(ev, 1.0, default_discard(1000000), 5.0);
    const auto m = empirical_moments(bins);
    const auto w = theoretical_moments(0.5, 1.0, 2.0, 1.0, 4.0);
    EXPECT_NEAR(m.m1, w.m1, 0.02 * w.m1);
    EXPECT_NEAR(m.m2, w.m2, 0.02 * w.m2);
    // the lag covariance is tiny at this lag; it only has to agree within its sampling noise
    EXPECT_NEAR(m.m3, w.m3, 4.0 * m.m2 / std::sqrt(static_cast<double>(bins.counts.size())));
}

TEST(MonteCarlo, RelativeErrorShrinksWithHorizon) {
    const auto w = theoretical_moments(0.5, 1.0, 2.0, 1.0, 0.0);
    std::vector<double> med1, med2;
    Rng root(5);
    for (double T : {1e4, 1e5, 1e6}) {
        std::vector<double> e1, e2;
        for (int r = 0; r < 20; ++r) {
            Rng rng = root.split(static_cast<std::uint64_t>(r) + static_cast<std::uint64_t>(T));
            const auto ev = simulate_exact_exp(kBase, T, rng);
            const auto bins = bin_counts(ev, 1.0, default_discard(static_cast<std::size_t>(T)));
            const auto m = empirical_moments(bins);
            e1.push_back(std::abs(m.m1 - w.m1) / w.m1);
            e2.push_back(std::abs(m.m2 - w.m2) / w.m2);
        }
        med1.push_back(stats::median(e1));
        med2.push_back(stats::median(e2));
    }
    EXPECT_GT(med1[0], med1[1]);
    EXPECT_GT(med1[1], med1[2]);
    EXPECT_GT(med2[0], med2[1]);
    EXPECT_GT(med2[1], med2[2]);
}

TEST(FitGmm, IdentityFitRecoversParameters) {
    for (double gap : {0.0, 2.0}) {
        const auto w = theoretical_moments(0.5, 1.0, 2.0, 1.0, gap);
        const auto fit = fit_gmm_moments(w, 1.0, gap);
        ASSERT_TRUE(fit.converged);
        EXPECT_NEAR(fit.get("lambda"), 0.5, 1e-4);
        EXPECT_NEAR(fit.get("alpha"), 1.0, 1e-3);
        EXPECT_NEAR(fit.get("beta"), 2.0, 1e-3);
        EXPECT_LT(-fit.loglik, 1e-12);
    }
}

TEST(FitGmm, PoissonBins) {
    const HawkesModel m{2.0, std::nullopt, ExpKernel{0.0, 1.0}};
    Rng rng(6);
    const auto ev = simulate_thinning(m, 1e5, rng);
    const auto bins = bin_counts(ev, 1.0, default_discard(100000), 5.0);
    const auto fit = fit_gmm(bins);
    EXPECT_NEAR(fit.get("lambda"), 2.0, 0.2);
    EXPECT_LT(fit.get("alpha") / fit.get("beta"), 0.05);
}

TEST(FitGmm, EstimateNoWorseThanTruth) {
    Rng rng(7);
    const auto ev = simulate_exact_exp(kBase, 1e5, rng);
    const auto bins = bin_counts(ev, 1.0, default_discard(100000), 5.0);
    const auto fit = fit_gmm(bins);
    const auto m = empirical_moments(bins);
    const double gap = static_cast<double>(bins.lag() - 1) * bins.tau;
    const double at_truth = criterion(m, theoretical_moments(0.5, 1.0, 2.0, 1.0, gap));
    EXPECT_LE(-fit.loglik, at_truth);
    const double at_fit = criterion(m, theoretical_moments(fit.get("lambda"), fit.get("alpha"), fit.get("beta"), 1.0, gap));
    EXPECT_NEAR(-fit.loglik, at_fit, 1e-15 + 1e-9 * at_fit);
    EXPECT_NEAR(fit.get("lambda") * fit.get("beta") / (fit.get("beta") - fit.get("alpha")), m.m1, 1e-3 * m.m1);
}

TEST(FitGmm, WeakIdentificationWarning) {
    MomentTriple m{1.0, 2.0, -0.01, MomentTriple::Kind::empirical};
    const auto fit = fit_gmm_moments(m, 1.0, 1.0);
    bool warned = false;
    for (const auto& w : fit.warnings) warned |= w.find("weakly identified") != std::string::npos;
    EXPECT_TRUE(warned);
}

TEST(FitGmm, NeedsPositiveLag) {
    const auto bins = bin_counts(EventSequence({0.5, 1.5, 2.5}, 10.0), 1.0, 0, 0.0);
    EXPECT_THROW((void)fit_gmm(bins), ConfigError);
}

TEST(FitGmm, StartAndDefaultLag) {
    const auto w = theoretical_moments(0.5, 1.0, 2.0, 1.0, 0.0);
    const auto start = gmm_start(w, 1.0);
    ASSERT_EQ(start.size(), 3u);
    EXPECT_GT(start[0], 0.0);
    EXPECT_GE(start[1], 0.0);
    EXPECT_LT(start[1], start[2]);
    // implied mean rate of the start matches m1
    EXPECT_NEAR(start[0] * start[2] / (start[2] - start[1]), w.m1, 1e-12);
    const double delta = default_gmm_delta(w, 1.0);
    EXPECT_GE(delta, 2.0);
    EXPECT_EQ(delta, std::round(delta));
}
