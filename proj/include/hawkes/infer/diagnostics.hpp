#pragma once

#include <vector>

#include "hawkes/core/events.hpp"
#include "hawkes/core/model.hpp"
#include "hawkes/sim/models.hpp"
#include "hawkes/sim/rng.hpp"

namespace hawkes {

struct DeclusterResult {
    /// Probability that each arrival is a background event.
    std::vector<double> rho;
    /// true = background, false = triggered; arrival i is background iff U_i < rho_i.
    std::vector<bool> background;
};

/// rho_i = background(t_i) / lambda*(t_i), where the background is the
/// deterministic part lambda + (lambda0 - lambda) e^{-beta t}.
[[nodiscard]] DeclusterResult decluster(const HawkesModel& model, const EventSequence& events, Rng& rng);
/// rho_i = lambda / lambda*_g(t_i).
[[nodiscard]] DeclusterResult decluster(const EtasModel& model, const EventSequence& events, Rng& rng);

struct GofResult {
    double ks_statistic = 0.0;
    double p_value = 1.0;
    /// Compensator increments Lambda(t_i) - Lambda(t_{i-1}), with t_0 = 0.
    std::vector<double> rescaled_interarrivals;
};

/// One-sample KS test of the rescaled interarrivals against Exp(1).
/// DataError with fewer than 10 arrivals.
[[nodiscard]] GofResult gof_rescaling(const HawkesModel& model, const EventSequence& events, double T);

/// KS statistic and asymptotic p-value of values against the unit exponential.
[[nodiscard]] GofResult ks_test_exponential(std::vector<double> values);

/// P(K > x) for the Kolmogorov distribution.
[[nodiscard]] double kolmogorov_survival(double x);

}  // namespace hawkes
