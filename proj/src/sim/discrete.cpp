#include <algorithm>
#include <span>
#include <vector>

#include "hawkes/sim/simulate.hpp"
#include "hawkes/simd/kernels.hpp"

namespace hawkes {

std::vector<std::uint64_t> simulate_discrete(const DiscreteModel& model, std::size_t steps, Rng& rng) {
    model.validate();
    std::vector<std::uint64_t> counts;
    std::vector<double> history;
    counts.reserve(steps);
    history.reserve(steps);
    const std::span<const double> g(model.g);
    for (std::size_t t = 0; t < steps; ++t) {
        const std::size_t lags = std::min(g.size(), t);
        double excitation = 0.0;
        if (lags > 0) {
            excitation = simd::dot_reversed(g.first(lags), std::span<const double>(history.data() + (t - lags), lags));
        }
        const double mean = model.lambda + model.eta * excitation;
        std::uint64_t y = 0;
        if (model.emission == DiscreteModel::Emission::poisson) {
            y = rng.poisson(mean);
        } else {
            // gamma-Poisson mixture: mean m, variance m + m^2 / psi
            y = rng.poisson(rng.gamma(model.psi, model.psi / mean));
        }
        counts.push_back(y);
        history.push_back(static_cast<double>(y));
    }
    return counts;
}

}  // namespace hawkes
