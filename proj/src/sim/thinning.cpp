#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "hawkes/core/error.hpp"
#include "hawkes/multivariate/detail.hpp"
#include "hawkes/sim/simulate.hpp"
#include "hawkes/simd/kernels.hpp"

namespace hawkes {

namespace {

void check_horizon(double horizon) {
    if (!std::isfinite(horizon) || !(horizon > 0.0)) throw ConfigError("horizon T must be finite and > 0");
}

void check_bound(double value, double bound, double t) {
    if (value > bound * (1.0 + 1e-12) + 1e-300) {
        throw NumericalError(fmt::format("thinning bound violated at t = {}: intensity {} > bound {}", t, value, bound));
    }
}

void record(ThinningStats* stats, double intensity) {
    if (!stats) return;
    ++stats->accepted;
    stats->accepted_intensity.push_back(intensity);
}

// Excitation of a power-law kernel over the full history at t.
double power_excitation(const PowerLawKernel& k, std::span<const double> history, double t) {
    if (history.empty()) return 0.0;
    return k.K * std::pow(k.c, -k.p) * simd::sum_power_decay(history, {}, t, k.c, k.p);
}

}  // namespace

EventSequence simulate_thinning(const HawkesModel& model, double horizon, Rng& rng, ThinningStats* stats) {
    model.validate();
    check_horizon(horizon);

    const auto* ek = std::get_if<ExpKernel>(&model.kernel);
    const auto* pk = std::get_if<PowerLawKernel>(&model.kernel);
    std::vector<double> times;
    double t = 0.0;
    double excess = 0.0;  // exponential kernel: excitation at the current time, right limit

    while (true) {
        const double exc_right = ek ? excess : power_excitation(*pk, times, t);
        const double bound = std::max(model.baseline(t), model.lambda) + exc_right;
        if (!(bound > 0.0)) break;
        const double dt = rng.exponential(bound);
        const double cand = t + dt;
        if (cand > horizon) break;
        if (ek) excess *= std::exp(-ek->beta * dt);
        const double exc_left = ek ? excess : power_excitation(*pk, times, cand);
        const double value = model.baseline(cand) + exc_left;
        if (stats) ++stats->candidates;
        check_bound(value, bound, cand);
        const double u = rng.uniform();
        t = cand;
        if (u * bound <= value) {
            times.push_back(cand);
            if (ek) excess += ek->alpha;
            record(stats, value);
        }
    }
    return EventSequence(std::move(times), horizon);
}

EventSequence simulate_nonlinear(const NonlinearSpec& spec, double horizon, Rng& rng, ThinningStats* stats) {
    spec.validate();
    check_horizon(horizon);

    std::vector<double> times;
    double t = 0.0;
    double x = 0.0;
    while (true) {
        const double bound = spec.phi(spec.lambda, std::max(x, 0.0));
        // zero bound: lambda = 0 and x <= 0, which only decays towards 0
        if (!(bound > 0.0)) break;
        const double dt = rng.exponential(bound);
        const double cand = t + dt;
        if (cand > horizon) break;
        x *= std::exp(-spec.kernel.beta * dt);
        const double value = spec.phi(spec.lambda, x);
        if (stats) ++stats->candidates;
        check_bound(value, bound, cand);
        const double u = rng.uniform();
        t = cand;
        if (u * bound <= value) {
            times.push_back(cand);
            x += spec.kernel.alpha;
            record(stats, value);
        }
    }
    return EventSequence(std::move(times), horizon);
}

EventSequence simulate_multivariate(const MultivariateHawkesModel& model, double horizon, Rng& rng,
                                    ThinningStats* stats) {
    model.validate();
    check_horizon(horizon);

    const auto d = static_cast<std::size_t>(model.d);
    // excess[j * d + k]: exponential excitation from source j on target k (right limit)
    std::vector<double> excess(d * d, 0.0);
    std::vector<std::vector<double>> history(d);
    std::vector<double> times;
    std::vector<int> dims;
    std::vector<double> rates(d);

    const auto fill_rates = [&](double at) {
        double total = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            double value = model.baselines[k];
            for (std::size_t j = 0; j < d; ++j) {
                const Kernel& kern = model.kernels[j * d + k];
                if (std::holds_alternative<ExpKernel>(kern)) {
                    value += excess[j * d + k];
                } else {
                    value += power_excitation(std::get<PowerLawKernel>(kern), history[j], at);
                }
            }
            rates[k] = value;
            total += value;
        }
        return total;
    };
    const auto decay = [&](double dt) {
        for (std::size_t i = 0; i < d * d; ++i) {
            if (const auto* e = std::get_if<ExpKernel>(&model.kernels[i])) excess[i] *= std::exp(-e->beta * dt);
        }
    };

    double t = 0.0;
    while (true) {
        const double bound = fill_rates(t);
        if (!(bound > 0.0)) break;
        const double dt = rng.exponential(bound);
        const double cand = t + dt;
        if (cand > horizon) break;
        decay(dt);
        const double value = fill_rates(cand);
        if (stats) ++stats->candidates;
        check_bound(value, bound, cand);
        const double target = rng.uniform() * bound;
        t = cand;
        if (target > value) continue;
        std::size_t k = 0;
        double cumulative = rates[0];
        while (target > cumulative && k + 1 < d) cumulative += rates[++k];
        times.push_back(cand);
        dims.push_back(static_cast<int>(k));
        history[k].push_back(cand);
        for (std::size_t m = 0; m < d; ++m) {
            if (const auto* e = std::get_if<ExpKernel>(&model.kernels[k * d + m])) excess[k * d + m] += e->alpha;
        }
        record(stats, value);
    }
    return EventSequence(std::move(times), horizon, std::nullopt, std::move(dims));
}

ContagionPath simulate_dynamic_contagion(const DynamicContagionModel& model, double horizon, Rng& rng,
                                         ThinningStats* stats) {
    model.validate();
    check_horizon(horizon);

    ContagionPath path;
    for (double s = rng.exponential(model.rho); s <= horizon; s += rng.exponential(model.rho)) {
        path.shock_times.push_back(s);
        path.shock_sizes.push_back(model.external_jump.sample(rng));
    }

    std::vector<double> times;
    double t = 0.0;
    double excess = model.lambda0 - model.a;
    std::size_t next_shock = 0;
    while (true) {
        const double bound = model.a + excess;
        const double dt = rng.exponential(bound);
        const double cand = t + dt;
        const double shock_at =
            next_shock < path.shock_times.size() ? path.shock_times[next_shock] : std::numeric_limits<double>::infinity();
        if (cand > shock_at) {
            // the bound is stale past the shock; restart there (memoryless)
            excess = excess * std::exp(-model.delta * (shock_at - t)) + path.shock_sizes[next_shock];
            t = shock_at;
            ++next_shock;
            continue;
        }
        if (cand > horizon) break;
        excess *= std::exp(-model.delta * dt);
        const double value = model.a + excess;
        if (stats) ++stats->candidates;
        check_bound(value, bound, cand);
        const double u = rng.uniform();
        t = cand;
        if (u * bound <= value) {
            times.push_back(cand);
            excess += model.self_jump.sample(rng);
            record(stats, value);
        }
    }
    path.events = EventSequence(std::move(times), horizon);
    return path;
}

EventSequence simulate_etas(const EtasModel& model, double horizon, Rng& rng, ThinningStats* stats) {
    model.validate();
    check_horizon(horizon);

    std::vector<double> times;
    std::vector<double> marks;
    std::vector<double> weights;  // eta(M_i) nu(0)
    const double nu0 = (model.p - 1.0) / model.c;
    const auto ground = [&](double at) {
        if (times.empty()) return model.lambda;
        return model.lambda + simd::sum_power_decay(times, weights, at, model.c, model.p);
    };

    double t = 0.0;
    while (true) {
        const double bound = ground(t);
        const double dt = rng.exponential(bound);
        const double cand = t + dt;
        if (cand > horizon) break;
        const double value = ground(cand);
        if (stats) ++stats->candidates;
        check_bound(value, bound, cand);
        const double u = rng.uniform();
        t = cand;
        if (u * bound <= value) {
            const double mark = std::isinf(model.beta) ? model.m0 : model.m0 + rng.exponential(model.beta);
            times.push_back(cand);
            marks.push_back(mark);
            weights.push_back(model.productivity(mark) * nu0);
            record(stats, value);
        }
    }
    return EventSequence(std::move(times), horizon, std::move(marks));
}

}  // namespace hawkes
