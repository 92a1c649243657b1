#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hawkes/core/events.hpp"
#include "hawkes/core/model.hpp"
#include "hawkes/multivariate/model.hpp"
#include "hawkes/sim/models.hpp"
#include "hawkes/sim/rng.hpp"

namespace hawkes {

/// Candidate bookkeeping of a thinning run.
struct ThinningStats {
    std::size_t candidates = 0;
    std::size_t accepted = 0;
    /// Left-limit intensity at each accepted arrival.
    std::vector<double> accepted_intensity;

    [[nodiscard]] double acceptance_ratio() const noexcept {
        return candidates == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(candidates);
    }
};

/// Ogata thinning. The bound after each candidate is the right-limit
/// intensity, which dominates the path until the next arrival because every
/// supported kernel is non-increasing (a rising lambda0 < lambda start is
/// covered by bounding the baseline with lambda). Throws NumericalError if a
/// candidate intensity ever exceeds its bound.
[[nodiscard]] EventSequence simulate_thinning(const HawkesModel& model, double horizon, Rng& rng,
                                              ThinningStats* stats = nullptr);

/// Exact simulation of the exponential model by composition: each interarrival
/// is min(E1, E2) with E1 ~ Exp(lambda) from the baseline and E2 the first
/// arrival of the decaying excess (infinite when the excess dies out first).
/// Needs lambda0 >= lambda.
[[nodiscard]] EventSequence simulate_exact_exp(const HawkesModel& model, double horizon, Rng& rng);

/// Immigration-birth construction. Every arrival, immigrant or offspring,
/// spawns Poisson(integral of mu) children of its own. One draw from rng
/// seeds a parent stream and cluster i uses its split(i). Throws NumericalError when a single cluster exceeds
/// max_cluster_size arrivals.
[[nodiscard]] EventSequence simulate_cluster(double lambda, const Kernel& kernel, double horizon, Rng& rng,
                                             std::size_t max_cluster_size = 1'000'000);

/// Thinning for phi(lambda + sum alpha e^{-beta (t - T_i)}) with signed alpha.
/// Bound between arrivals: phi(lambda + max(x(t+), 0)).
[[nodiscard]] EventSequence simulate_nonlinear(const NonlinearSpec& spec, double horizon, Rng& rng,
                                               ThinningStats* stats = nullptr);

/// Superposed thinning; an accepted candidate goes to dimension k with
/// probability lambda*_k / sum_j lambda*_j, using the same uniform as the
/// acceptance test so that d = 1 consumes randomness exactly like
/// simulate_thinning.
[[nodiscard]] EventSequence simulate_multivariate(const MultivariateHawkesModel& model, double horizon, Rng& rng,
                                                  ThinningStats* stats = nullptr);

/// Counts Y_1..Y_T of the discrete-time model.
[[nodiscard]] std::vector<std::uint64_t> simulate_discrete(const DiscreteModel& model, std::size_t steps, Rng& rng);

struct ContagionPath {
    EventSequence events;
    std::vector<double> shock_times;
    std::vector<double> shock_sizes;
};

/// Thinning with the bound refreshed at every external shock.
[[nodiscard]] ContagionPath simulate_dynamic_contagion(const DynamicContagionModel& model, double horizon, Rng& rng,
                                                       ThinningStats* stats = nullptr);

/// Ground process by thinning, marks drawn independently from the
/// Gutenberg-Richter law at each accepted arrival.
[[nodiscard]] EventSequence simulate_etas(const EtasModel& model, double horizon, Rng& rng,
                                          ThinningStats* stats = nullptr);

/// Immigrants from i.i.d. renewal waiting times, each spawning a cluster as in simulate_cluster.
[[nodiscard]] EventSequence simulate_renewal_hawkes(const RenewalHawkesModel& model, double horizon, Rng& rng,
                                                    std::size_t max_cluster_size = 1'000'000);

/// Descendants (not including the root) of an arrival at root_time, restricted to (root_time, horizon].
/// Appended to out, unsorted.
void grow_cluster(double root_time, const Kernel& kernel, double horizon, Rng& rng, std::vector<double>& out,
                  std::size_t max_cluster_size = 1'000'000);

}  // namespace hawkes
