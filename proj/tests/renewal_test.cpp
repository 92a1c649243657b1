#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hawkes/core/error.hpp"
#include "hawkes/renewal/renewal.hpp"
#include "hawkes/sim/simulate.hpp"
#include "oracles.hpp"
#include "stats.hpp"

using namespace hawkes;

TEST(RenewalDensity, ExponentialHazardIsConstant) {
    const auto g = RenewalDensity::exponential(0.7);
    for (double w : {0.0, 0.5, 3.0, 20.0}) EXPECT_NEAR(renewal_intensity(g, w), 0.7, 1e-12);
}

TEST(RenewalDensity, GammaHazardExample) {
    EXPECT_NEAR(renewal_intensity(RenewalDensity::gamma(2.0, 1.0), 1.0), 0.5, 1e-14);
    EXPECT_EQ(renewal_intensity(RenewalDensity::gamma(2.0, 1.0), 0.0), 0.0);
    EXPECT_EQ(renewal_intensity(RenewalDensity::weibull(2.0, 1.0), 0.0), 0.0);
}

TEST(RenewalDensity, WeibullHazardClosedForm) {
    // h(w) = (k / s) (w / s)^{k - 1}
    const auto g = RenewalDensity::weibull(1.5, 2.0);
    for (double w : {0.3, 1.0, 4.0}) EXPECT_NEAR(renewal_intensity(g, w), 0.75 * std::pow(w / 2.0, 0.5), 1e-12);
}

TEST(RenewalDensity, CdfIsIntegralOfPdf) {
    for (const auto& g : {RenewalDensity::exponential(1.3), RenewalDensity::gamma(2.5, 1.5), RenewalDensity::weibull(1.7, 0.8)}) {
        for (double w : {0.1, 0.9, 2.5}) {
            EXPECT_NEAR(g.cdf(w), oracle::simpson([&](double s) { return g.pdf(s); }, 0.0, w), 1e-10) << g.describe();
            EXPECT_NEAR(g.cdf(w) + g.survival(w), 1.0, 1e-14);
        }
        EXPECT_EQ(g.cdf(0.0), 0.0);
    }
}

TEST(RenewalDensity, HazardUndefinedAtExhaustedSupport) {
    EXPECT_THROW((void)renewal_intensity(RenewalDensity::weibull(3.0, 1.0), 10.0), NumericalError);
}

TEST(RenewalDensity, SampleMean) {
    Rng rng(1);
    for (const auto& g : {RenewalDensity::gamma(2.0, 2.0), RenewalDensity::weibull(1.5, 2.0)}) {
        std::vector<double> xs;
        for (int i = 0; i < 20000; ++i) xs.push_back(g.sample(rng));
        EXPECT_TRUE(stats::mean_near(stats::summarize(xs), g.mean(), 4.0)) << g.describe();
    }
}

TEST(RenewalDensity, RejectsBadParameters) {
    EXPECT_THROW(RenewalDensity::exponential(0.0).validate(), ConfigError);
    EXPECT_THROW(RenewalDensity::gamma(-1.0, 1.0).validate(), ConfigError);
    EXPECT_THROW(RenewalDensity::weibull(1.0, 0.0).validate(), ConfigError);
}

TEST(SolveK, ZeroKernel) {
    const auto K = solve_K(ExpKernel{0.0, 1.0}, 0.01, 5.0);
    for (double v : K.values) EXPECT_EQ(v, 0.0);
}

TEST(SolveK, ExponentialClosedForm) {
    // for mu = alpha e^{-beta t}, K(t) = alpha / kappa (1 - e^{-kappa t}) with kappa = beta - alpha
    // trapezoidal error is O(h^2): about 0.7 h^2 here
    const auto K = solve_K(ExpKernel{1.0, 2.0}, 0.005, 10.0);
    for (double t : {1.0, 5.0, 10.0}) EXPECT_NEAR(K.at(t), 1.0 - std::exp(-t), 3e-5) << t;
    EXPECT_EQ(K.values.front(), 0.0);
}

TEST(SolveK, HalfStepAgreement) {
    const auto a = solve_K(ExpKernel{1.0, 2.0}, 0.01, 10.0);
    const auto b = solve_K(ExpKernel{1.0, 2.0}, 0.005, 10.0);
    for (double t : {1.0, 5.0, 10.0}) EXPECT_NEAR(a.at(t), b.at(t), 1e-4);
}

TEST(SolveK, TendsToTotalOffspring) {
    const auto K = solve_K(ExpKernel{1.0, 2.0}, 0.01, 40.0);
    EXPECT_NEAR(K.values.back(), 1.0, 1e-4);
    const auto P = solve_K(PowerLawKernel{0.5, 1.0, 3.0}, 0.01, 200.0);
    // eta = 0.25, total offspring 1/3; the power-law tail converges slowly
    EXPECT_NEAR(P.values.back(), 1.0 / 3.0, 2e-3);
}

TEST(SolveK, RichardsonRatio) {
    const ExpKernel k{1.0, 2.0};
    const double h = 0.04;
    const auto a = solve_K(k, h, 8.0), b = solve_K(k, h / 2, 8.0), c = solve_K(k, h / 4, 8.0);
    for (double t : {2.0, 8.0}) {
        const double ratio = (a.at(t) - b.at(t)) / (b.at(t) - c.at(t));
        EXPECT_GE(ratio, 3.5) << t;
        EXPECT_LE(ratio, 4.5) << t;
    }
}

TEST(SolveK, RejectsOffGridHorizon) {
    EXPECT_THROW((void)solve_K(ExpKernel{1.0, 2.0}, 0.3, 1.0), ConfigError);
    EXPECT_THROW((void)solve_K(ExpKernel{1.0, 2.0}, 0.0, 1.0), ConfigError);
}

TEST(SolveM, PoissonIsIdentity) {
    const auto mf = solve_mean_functions(RenewalDensity::exponential(1.0), ExpKernel{0.0, 1.0}, 10.0);
    EXPECT_TRUE(mf.converged);
    EXPECT_NEAR(mf.M.at(10.0), 10.0, 1e-4);
    EXPECT_NEAR(mf.M.at(3.3), 3.3, 1e-4);
}

TEST(SolveM, ExponentialImmigrantsClosedForm) {
    // Poisson immigrants: M(t) = lambda int_0^t (1 + K(s)) ds
    const auto K = solve_K(ExpKernel{1.0, 2.0}, 0.005, 20.0);
    const auto M = solve_M(RenewalDensity::exponential(0.5), K);
    for (double t : {1.0, 10.0, 20.0}) {
        const double exact = 0.5 * (2.0 * t - (1.0 - std::exp(-t)));
        EXPECT_NEAR(M.at(t), exact, 1e-4 * std::max(1.0, exact)) << t;
    }
}

TEST(SolveM, MonotoneAndNonNegative) {
    const auto mf = solve_mean_functions(RenewalDensity::gamma(2.0, 2.0), PowerLawKernel{0.3, 0.5, 2.0}, 30.0);
    for (std::size_t i = 1; i < mf.K.size(); ++i) {
        EXPECT_GE(mf.K.values[i], mf.K.values[i - 1]);
        EXPECT_GE(mf.M.values[i], mf.M.values[i - 1]);
    }
    EXPECT_EQ(mf.M.values.front(), 0.0);
    EXPECT_TRUE(mf.converged);
}

TEST(SolveM, RichardsonRatio) {
    const auto g = RenewalDensity::gamma(2.0, 2.0);
    const ExpKernel k{1.0, 2.0};
    const double h = 0.04;
    const auto ka = solve_K(k, h, 10.0), kb = solve_K(k, h / 2, 10.0), kc = solve_K(k, h / 4, 10.0);
    const auto a = solve_M(g, ka), b = solve_M(g, kb), c = solve_M(g, kc);
    for (double t : {2.0, 10.0}) {
        const double ratio = (a.at(t) - b.at(t)) / (b.at(t) - c.at(t));
        EXPECT_GE(ratio, 3.5) << t;
        EXPECT_LE(ratio, 4.5) << t;
    }
}

TEST(SolveM, LongRunSlope) {
    // lambda = 0.5, eta = 0.5: slope lambda / (1 - eta) = 1, checked at t = 200 / ((1 - eta) lambda) = 800
    const auto mf = solve_mean_functions(RenewalDensity::exponential(0.5), ExpKernel{1.0, 2.0}, 800.0,
                                         {0.05, 1e-5, 0, false});
    EXPECT_NEAR(mf.M.values.back() / 800.0, 1.0, 0.05);
}

TEST(SolveM, RejectsUnboundedDensity) {
    const auto K = solve_K(ExpKernel{0.5, 1.0}, 0.01, 1.0);
    EXPECT_THROW((void)solve_M(RenewalDensity::gamma(0.5, 1.0), K), ConfigError);
}

TEST(MeanFunctions, SelfCheckHalving) {
    MeanFunctionOptions opt;
    opt.step = 0.2;
    opt.max_halvings = 10;
    const auto mf = solve_mean_functions(RenewalDensity::exponential(1.0), ExpKernel{1.0, 2.0}, 10.0, opt);
    EXPECT_GT(mf.halvings, 0);
    EXPECT_TRUE(mf.converged);
    EXPECT_LT(mf.change, 1e-5);
    EXPECT_EQ(default_volterra_step(ExpKernel{1.0, 2.0}), 0.005);
}

TEST(MeanFunctions, MatchesClusterSimulation) {
    const auto mf = solve_mean_functions(RenewalDensity::exponential(0.5), ExpKernel{1.0, 2.0}, 50.0);
    std::vector<double> n10, n50;
    Rng root(3);
    for (int r = 0; r < 2000; ++r) {
        Rng rng = root.split(static_cast<std::uint64_t>(r));
        const auto ev = simulate_cluster(0.5, ExpKernel{1.0, 2.0}, 50.0, rng);
        n10.push_back(static_cast<double>(ev.count_through(10.0)));
        n50.push_back(static_cast<double>(ev.size()));
    }
    EXPECT_NEAR(stats::summarize(n10).mean, mf.M.at(10.0), 0.03 * mf.M.at(10.0));
    EXPECT_NEAR(stats::summarize(n50).mean, mf.M.at(50.0), 0.03 * mf.M.at(50.0));
}

TEST(MeanFunctions, MatchesRenewalHawkesSimulation) {
    const auto g = RenewalDensity::gamma(2.0, 2.0);
    const auto mf = solve_mean_functions(g, ExpKernel{1.0, 2.0}, 50.0);
    std::vector<double> n10, n50;
    Rng root(4);
    for (int r = 0; r < 2000; ++r) {
        Rng rng = root.split(static_cast<std::uint64_t>(r));
        const auto ev = simulate_renewal_hawkes({g, ExpKernel{1.0, 2.0}}, 50.0, rng);
        n10.push_back(static_cast<double>(ev.count_through(10.0)));
        n50.push_back(static_cast<double>(ev.size()));
    }
    EXPECT_NEAR(stats::summarize(n10).mean, mf.M.at(10.0), 0.03 * mf.M.at(10.0));
    EXPECT_NEAR(stats::summarize(n50).mean, mf.M.at(50.0), 0.03 * mf.M.at(50.0));
}
