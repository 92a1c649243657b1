#include <cmath>
#include <limits>
#include <vector>

#include "hawkes/core/error.hpp"
#include "hawkes/sim/simulate.hpp"

namespace hawkes {

EventSequence simulate_exact_exp(const HawkesModel& model, double horizon, Rng& rng) {
    model.validate();
    if (!std::isfinite(horizon) || !(horizon > 0.0)) throw ConfigError("horizon T must be finite and > 0");
    const auto* k = std::get_if<ExpKernel>(&model.kernel);
    if (!k) throw ConfigError("exact simulation needs an exponential kernel");
    if (model.initial_intensity() < model.lambda) {
        throw ConfigError("exact simulation needs lambda0 >= lambda; use thinning instead");
    }

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> times;
    double t = 0.0;
    double excess = model.initial_intensity() - model.lambda;  // right limit of lambda*(t) - lambda
    while (true) {
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        const double e1 = model.lambda > 0.0 ? -std::log(u1) / model.lambda : inf;
        double e2 = inf;
        if (excess > 0.0) {
            const double arg = 1.0 + k->beta * std::log(u2) / excess;
            if (arg > 0.0) e2 = -std::log(arg) / k->beta;
        }
        const double dt = std::min(e1, e2);
        if (!std::isfinite(dt)) break;
        t += dt;
        if (t > horizon) break;
        excess = excess * std::exp(-k->beta * dt) + k->alpha;
        times.push_back(t);
    }
    return EventSequence(std::move(times), horizon);
}

}  // namespace hawkes
