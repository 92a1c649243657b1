#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "hawkes/core/error.hpp"
#include "hawkes/sim/simulate.hpp"

namespace hawkes {

namespace {

// Offset in (0, limit] drawn from mu restricted to [0, limit].
double sample_offset(const Kernel& kernel, double limit, Rng& rng) {
    const double u = rng.uniform();
    if (const auto* e = std::get_if<ExpKernel>(&kernel)) {
        const double mass = -std::expm1(-e->beta * limit);
        return -std::log1p(-u * mass) / e->beta;
    }
    const auto& p = std::get<PowerLawKernel>(kernel);
    // F(x) = 1 - (1 + x/c)^{1-p}
    const double mass = -std::expm1((1.0 - p.p) * std::log1p(limit / p.c));
    return p.c * std::expm1(std::log1p(-u * mass) / (1.0 - p.p));
}

std::vector<double> cluster_process(const std::vector<double>& roots, const Kernel& kernel, double horizon,
                                    Rng& rng, std::size_t cap) {
    // one stream per cluster, keyed by the root's index
    Rng streams(rng.engine()());
    std::vector<double> all(roots);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        Rng child = streams.split(i);
        grow_cluster(roots[i], kernel, horizon, child, all, cap);
    }
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

void grow_cluster(double root_time, const Kernel& kernel, double horizon, Rng& rng, std::vector<double>& out,
                  std::size_t max_cluster_size) {
    std::vector<double> pending{root_time};
    std::size_t size = 1;
    while (!pending.empty()) {
        const double parent = pending.back();
        pending.pop_back();
        const double limit = horizon - parent;
        if (!(limit > 0.0)) continue;
        const std::uint64_t n = rng.poisson(kernel_integral(kernel, limit));
        for (std::uint64_t c = 0; c < n; ++c) {
            const double child = parent + sample_offset(kernel, limit, rng);
            if (!(child > parent) || child > horizon) continue;
            if (++size > max_cluster_size) {
                throw NumericalError(fmt::format("a cluster exceeded the safety cap of {} arrivals", max_cluster_size));
            }
            out.push_back(child);
            pending.push_back(child);
        }
    }
}

EventSequence simulate_cluster(double lambda, const Kernel& kernel, double horizon, Rng& rng,
                               std::size_t max_cluster_size) {
    if (!std::isfinite(lambda) || lambda < 0.0) throw ConfigError("lambda must be finite and >= 0");
    validate(kernel);
    if (!std::isfinite(horizon) || !(horizon > 0.0)) throw ConfigError("horizon T must be finite and > 0");

    std::vector<double> roots;
    for (double t = rng.exponential(lambda); t <= horizon; t += rng.exponential(lambda)) roots.push_back(t);
    return EventSequence(cluster_process(roots, kernel, horizon, rng, max_cluster_size), horizon);
}

EventSequence simulate_renewal_hawkes(const RenewalHawkesModel& model, double horizon, Rng& rng,
                                      std::size_t max_cluster_size) {
    model.validate();
    if (!std::isfinite(horizon) || !(horizon > 0.0)) throw ConfigError("horizon T must be finite and > 0");

    std::vector<double> roots;
    for (double t = model.density.sample(rng); t <= horizon; t += model.density.sample(rng)) {
        if (!roots.empty() && t == roots.back()) continue;
        roots.push_back(t);
    }
    return EventSequence(cluster_process(roots, model.kernel, horizon, rng, max_cluster_size), horizon);
}

}  // namespace hawkes
