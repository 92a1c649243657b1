#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hawkes/core/events.hpp"
#include "hawkes/core/model.hpp"
#include "hawkes/multivariate/model.hpp"
#include "hawkes/sim/models.hpp"

namespace hawkes {

/// A log-likelihood. finite is false (and value is -infinity) when some
/// arrival falls where the intensity is zero.
struct LikelihoodValue {
    double value = 0.0;
    bool finite = true;

    [[nodiscard]] static LikelihoodValue minus_infinity() noexcept {
        return {-std::numeric_limits<double>::infinity(), false};
    }
};

/// sum_i log lambda*(t_i) - Lambda(T), with the excitation at t_i summed
/// over t_j < t_i directly. O(n^2); the reference implementation.
[[nodiscard]] LikelihoodValue loglik_general(const HawkesModel& model, const EventSequence& events, double T);

struct ExpParams {
    double lambda0 = 1.0;
    double lambda = 1.0;
    double alpha = 0.0;
    double beta = 1.0;
};

/// Same value as loglik_general for an exponential kernel in one O(n) pass:
///   A_1 = 0,  A_i = e^{-beta (t_i - t_{i-1})} (A_{i-1} + alpha),
///   lambda*(t_i) = lambda + (lambda0 - lambda) e^{-beta t_i} + A_i,
/// with the compensator in closed form.
[[nodiscard]] LikelihoodValue loglik_exp_fast(const ExpParams& params, const EventSequence& events, double T);

/// sum_k [sum over arrivals in k of log lambda*_k(t_i) - integral_0^T lambda*_k].
[[nodiscard]] LikelihoodValue loglik_multivariate(const MultivariateHawkesModel& model, const EventSequence& events,
                                                  double T);

/// Marked likelihood: sum_i [log lambda*_g(t_i) + log f(m_i)] - integral_0^T lambda*_g.
/// With beta = infinity the (degenerate) mark term is dropped. DataError when a mark is below m0.
[[nodiscard]] LikelihoodValue loglik_etas(const EtasModel& model, const EventSequence& events, double T);

/// sum_t log p(Y_t; lambda*_t, psi).
[[nodiscard]] LikelihoodValue loglik_discrete(const DiscreteModel& model, const std::vector<std::uint64_t>& counts);

}  // namespace hawkes
