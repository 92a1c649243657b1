#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hawkes/core/events.hpp"
#include "hawkes/core/model.hpp"
#include "hawkes/infer/optimize.hpp"
#include "hawkes/multivariate/model.hpp"
#include "hawkes/sim/models.hpp"

namespace hawkes {

enum class Family {
    poisson,   ///< theta = (lambda)
    exp,       ///< theta = (lambda, alpha, beta[, lambda0])
    powerlaw,  ///< theta = (lambda, K, c, p)
    etas,      ///< theta = (lambda, A, alpha, c, p, beta); beta in closed form
    mvexp,     ///< theta = (lambda_1..lambda_d, alpha_{j,k} row-major, beta_{j,k} row-major)
};

[[nodiscard]] Family parse_family(std::string_view name);
[[nodiscard]] std::string_view family_name(Family family) noexcept;

struct RestartRecord {
    std::vector<double> start;  ///< natural-scale parameters
    double loglik = 0.0;        ///< attained objective (log-likelihood, or minus the GMM criterion)
    int iterations = 0;
    bool converged = false;
};

/// Outcome of a multi-start fit. For likelihood fits loglik is the
/// log-likelihood at theta; GMM fits store minus the criterion there.
struct FitResult {
    std::vector<std::string> names;
    std::vector<double> theta;
    double loglik = 0.0;
    int restarts = 0;
    int best_restart = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<RestartRecord> restart_values;
    std::vector<std::string> warnings;
    std::optional<StationarityReport> stationarity;

    [[nodiscard]] double get(std::string_view name) const;
};

struct FitOptions {
    int restarts = 10;
    std::uint64_t seed = 20240601ULL;
    /// exp family: estimate lambda0 separately instead of tying it to lambda.
    bool fit_lambda0 = false;
    /// etas family: magnitude threshold.
    double m0 = 0.0;
    /// mvexp family: number of dimensions (0 takes 1 + the largest label).
    int d = 0;
    NelderMeadOptions optimizer{};
};

/// Maximum likelihood by multi-start Nelder-Mead over log-parameters (and
/// log(p - 1) for power-law exponents). Restart 0 starts from a moment
/// heuristic; restart k > 0 perturbs it with Rng(seed).split(k), so the best
/// value over the first k restarts never depends on how many are run.
/// Throws NumericalError if no restart converges.
[[nodiscard]] FitResult fit_mle(const EventSequence& events, double T, Family family, const FitOptions& options = {});

[[nodiscard]] HawkesModel to_hawkes_model(const FitResult& fit, Family family);
[[nodiscard]] EtasModel to_etas_model(const FitResult& fit, double m0);
[[nodiscard]] MultivariateHawkesModel to_multivariate_model(const FitResult& fit, int d);

}  // namespace hawkes
