#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "hawkes/core/error.hpp"
#include "hawkes/core/intensity.hpp"
#include "hawkes/multivariate/model.hpp"
#include "oracles.hpp"

using namespace hawkes;

namespace {

BranchingMatrix matrix(int d, std::vector<double> phi) { return {d, std::move(phi)}; }

MultivariateHawkesModel zero_model(int d, double lambda) {
    return MultivariateHawkesModel::with_shared_baseline(d, lambda, std::vector<Kernel>(static_cast<std::size_t>(d * d), ExpKernel{0.0, 1.0}));
}

}  // namespace

TEST(IntensityK, NoEventsGivesBaseline) {
    const MultivariateHawkesModel m{2, {0.3, 0.9}, {ExpKernel{1.0, 2.0}, ExpKernel{0.5, 1.0}, ExpKernel{0.2, 1.0}, ExpKernel{0.1, 1.0}}};
    const EventSequence ev({}, 5.0, std::nullopt, std::vector<int>{});
    EXPECT_EQ(intensity_k(m, ev, 0, 2.0), 0.3);
    EXPECT_EQ(intensity_k(m, ev, 1, 2.0), 0.9);
}

TEST(IntensityK, CrossExcitationExample) {
    std::vector<Kernel> k(4, ExpKernel{0.0, 1.0});
    k[1] = ExpKernel{0.5, 1.0};
    const MultivariateHawkesModel m{2, {0.2, 0.7}, k};
    const EventSequence ev({0.0}, 2.0, std::nullopt, std::vector<int>{0});
    EXPECT_NEAR(intensity_k(m, ev, 1, 1.0), 0.7 + 0.5 * std::exp(-1.0), 1e-15);
    EXPECT_EQ(intensity_k(m, ev, 0, 1.0), 0.2);
}

TEST(IntensityK, DimensionOneMatchesCore) {
    const HawkesModel h{0.5, std::nullopt, PowerLawKernel{0.3, 0.5, 1.7}};
    const auto m = MultivariateHawkesModel::with_shared_baseline(1, 0.5, {PowerLawKernel{0.3, 0.5, 1.7}});
    const std::vector<double> t{0.2, 1.0, 1.5, 3.0};
    const EventSequence ev(t, 4.0, std::nullopt, std::vector<int>(4, 0));
    for (double s : {0.0, 0.2, 0.9, 1.5, 2.7, 4.0}) {
        EXPECT_EQ(intensity_k(m, ev, 0, s), conditional_intensity(h, ev, s));
        EXPECT_EQ(intensity_k(m, ev, 0, s, Limit::right), conditional_intensity(h, ev, s, Limit::right));
    }
}

TEST(IntensityK, InvalidDimensionRejected) {
    const auto m = zero_model(2, 1.0);
    const EventSequence ev({1.0}, 2.0, std::nullopt, std::vector<int>{0});
    EXPECT_THROW((void)intensity_k(m, ev, 2, 1.0), std::out_of_range);
    EXPECT_THROW((void)intensity_k(m, ev, -1, 1.0), std::out_of_range);
}

TEST(CompensatorK, MatchesQuadrature) {
    const MultivariateHawkesModel m{2, {0.4, 0.6}, {ExpKernel{0.5, 2.0}, PowerLawKernel{0.2, 1.0, 2.0}, ExpKernel{0.3, 1.0}, ExpKernel{0.0, 1.0}}};
    const std::vector<double> t{0.5, 1.2, 2.0, 3.3};
    const std::vector<int> dims{0, 1, 0, 1};
    const EventSequence ev(t, 5.0, std::nullopt, dims);
    for (int k = 0; k < 2; ++k) {
        const double q = oracle::simpson_pieces([&](double s) { return intensity_k(m, ev, k, s); }, 0.0, 4.5, t);
        EXPECT_NEAR(compensator_k(m, ev, k, 4.5), q, 1e-9) << k;
    }
}

TEST(BranchingMatrix, ZeroAndDiagonal) {
    const auto z = branching_matrix(zero_model(3, 1.0));
    for (double v : z.phi) EXPECT_EQ(v, 0.0);
    std::vector<Kernel> k(4, ExpKernel{0.0, 1.0});
    k[0] = ExpKernel{1.0, 2.0};
    k[3] = ExpKernel{1.0, 2.0};
    const auto b = branching_matrix(MultivariateHawkesModel::with_shared_baseline(2, 1.0, k));
    EXPECT_EQ(b(0, 0), 0.5);
    EXPECT_EQ(b(1, 1), 0.5);
    EXPECT_EQ(b(0, 1), 0.0);
}

TEST(BranchingMatrix, MixedEntriesMatchQuadrature) {
    const PowerLawKernel pl{0.4, 0.5, 2.2};
    const ExpKernel ex{0.7, 1.3};
    const auto b = branching_matrix(MultivariateHawkesModel::with_shared_baseline(2, 1.0, {ex, pl, pl, ex}));
    // the power-law tail beyond 1e4 is K (1e4 + c)^{1-p} / (p - 1), added in closed form
    const double pl_quad = oracle::simpson([&](double s) { return pl.K * std::pow(s + pl.c, -pl.p); }, 0.0, 1e4, 1e-14, 1e-12) +
                           pl.K * std::pow(1e4 + pl.c, 1.0 - pl.p) / (pl.p - 1.0);
    const double ex_quad = oracle::simpson([&](double s) { return ex.alpha * std::exp(-ex.beta * s); }, 0.0, 60.0);
    EXPECT_NEAR(b(0, 0), ex_quad, 1e-8);
    EXPECT_NEAR(b(0, 1), pl_quad, 1e-8);
    EXPECT_NEAR(b(1, 0), pl_quad, 1e-8);
    const auto t = b.transposed();
    EXPECT_EQ(t(0, 1), b(1, 0));
}

TEST(SpectralRadius, Examples) {
    EXPECT_NEAR(spectral_radius(matrix(2, {0.5, 0.0, 0.0, 0.3})), 0.5, 1e-12);
    EXPECT_NEAR(spectral_radius(matrix(2, {0.0, 1.0, 0.0, 0.0})), 0.0, 1e-10);
    EXPECT_NEAR(spectral_radius(matrix(2, {0.5, 0.4, 0.0, 0.5})), 0.5, 1e-8);
    EXPECT_EQ(spectral_radius(matrix(3, std::vector<double>(9, 0.0))), 0.0);
    // a permutation matrix: every eigenvalue has modulus 1
    EXPECT_NEAR(spectral_radius(matrix(3, {0, 1, 0, 0, 0, 1, 1, 0, 0})), 1.0, 1e-10);
}

TEST(SpectralRadius, RandomTwoByTwoMatchesQuadratic) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double a = u(gen), b = u(gen), c = u(gen), d = u(gen);
        EXPECT_NEAR(spectral_radius(matrix(2, {a, b, c, d})), oracle::spectral_radius_2x2(a, b, c, d), 1e-8)
            << a << " " << b << " " << c << " " << d;
    }
}

TEST(SpectralRadius, TransposeAndScaling) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int d : {2, 3, 5, 8}) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> phi(static_cast<std::size_t>(d * d));
            for (auto& x : phi) x = u(gen) < 0.3 ? 0.0 : u(gen);
            const BranchingMatrix m = matrix(d, phi);
            const double r = spectral_radius(m);
            EXPECT_NEAR(spectral_radius(m.transposed()), r, 1e-8 * std::max(1.0, r));
            std::vector<double> scaled(phi);
            for (auto& x : scaled) x *= 2.7;
            EXPECT_NEAR(spectral_radius(matrix(d, scaled)), 2.7 * r, 1e-8 * std::max(1.0, r));
        }
    }
}

TEST(SpectralRadius, DimensionOneIsBranchingRatio) {
    for (const Kernel& k : {Kernel{ExpKernel{1.0, 2.0}}, Kernel{PowerLawKernel{0.3, 0.5, 1.7}}}) {
        const auto m = MultivariateHawkesModel::with_shared_baseline(1, 1.0, {k});
        EXPECT_EQ(spectral_radius(branching_matrix(m)), branching_ratio(k));
        EXPECT_EQ(is_stationary_mv(m).branching_ratio, branching_ratio(k));
    }
}

TEST(Stationarity, Examples) {
    const auto z = is_stationary_mv(zero_model(2, 1.0));
    EXPECT_TRUE(z.stationary);
    EXPECT_EQ(z.branching_ratio, 0.0);

    const auto one = is_stationary_mv(MultivariateHawkesModel::with_shared_baseline(1, 1.0, {ExpKernel{2.0, 2.0}}));
    EXPECT_FALSE(one.stationary);
    EXPECT_EQ(one.branching_ratio, 1.0);

    // [[0.5, 0.4], [0, 0.5]]
    const auto tri = is_stationary_mv(MultivariateHawkesModel::with_shared_baseline(
        2, 1.0, {ExpKernel{0.5, 1.0}, ExpKernel{0.4, 1.0}, ExpKernel{0.0, 1.0}, ExpKernel{0.5, 1.0}}));
    EXPECT_TRUE(tri.stationary);
    EXPECT_NEAR(tri.branching_ratio, 0.5, 1e-8);
}

TEST(Validation, RejectsBadModels) {
    EXPECT_THROW(MultivariateHawkesModel({0, {}, {}}).validate(), ConfigError);
    EXPECT_THROW(MultivariateHawkesModel({2, {1.0}, std::vector<Kernel>(4, ExpKernel{})}).validate(), ConfigError);
    EXPECT_THROW(MultivariateHawkesModel({2, {1.0, 1.0}, std::vector<Kernel>(3, ExpKernel{})}).validate(), ConfigError);
    EXPECT_THROW(MultivariateHawkesModel({1, {1.0}, {ExpKernel{-0.5, 1.0}}}).validate(), ConfigError);
    EXPECT_THROW(MultivariateHawkesModel({1, {-1.0}, {ExpKernel{0.5, 1.0}}}).validate(), ConfigError);
}
