#include "hawkes/renewal/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "hawkes/core/error.hpp"
#include "hawkes/sim/rng.hpp"
#include "hawkes/simd/kernels.hpp"

namespace hawkes {

RenewalDensity RenewalDensity::exponential(double rate) {
    RenewalDensity d;
    d.family = Family::exponential;
    d.rate = rate;
    return d;
}

RenewalDensity RenewalDensity::gamma(double shape, double rate) {
    RenewalDensity d;
    d.family = Family::gamma;
    d.shape = shape;
    d.rate = rate;
    return d;
}

RenewalDensity RenewalDensity::weibull(double shape, double scale) {
    RenewalDensity d;
    d.family = Family::weibull;
    d.shape = shape;
    d.scale = scale;
    return d;
}

void RenewalDensity::validate() const {
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    switch (family) {
        case Family::exponential:
            if (!positive(rate)) throw ConfigError("exponential density rate must be > 0");
            break;
        case Family::gamma:
            if (!positive(shape) || !positive(rate)) throw ConfigError("gamma density shape and rate must be > 0");
            break;
        case Family::weibull:
            if (!positive(shape) || !positive(scale)) throw ConfigError("weibull density shape and scale must be > 0");
            break;
    }
}

double RenewalDensity::pdf(double w) const {
    if (w < 0.0) return 0.0;
    switch (family) {
        case Family::exponential:
            return rate * std::exp(-rate * w);
        case Family::gamma:
            if (w == 0.0) return shape == 1.0 ? rate : (shape > 1.0 ? 0.0 : std::numeric_limits<double>::infinity());
            return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(w) - rate * w - std::lgamma(shape));
        case Family::weibull: {
            if (w == 0.0) return shape == 1.0 ? 1.0 / scale : (shape > 1.0 ? 0.0 : std::numeric_limits<double>::infinity());
            const double z = w / scale;
            return shape / scale * std::pow(z, shape - 1.0) * std::exp(-std::pow(z, shape));
        }
    }
    return 0.0;
}

double RenewalDensity::survival(double w) const {
    if (w <= 0.0) return 1.0;
    switch (family) {
        case Family::exponential:
            return std::exp(-rate * w);
        case Family::gamma:
            return boost::math::gamma_q(shape, rate * w);
        case Family::weibull:
            return std::exp(-std::pow(w / scale, shape));
    }
    return 1.0;
}

double RenewalDensity::cdf(double w) const {
    if (w <= 0.0) return 0.0;
    switch (family) {
        case Family::exponential:
            return -std::expm1(-rate * w);
        case Family::gamma:
            return boost::math::gamma_p(shape, rate * w);
        case Family::weibull:
            return -std::expm1(-std::pow(w / scale, shape));
    }
    return 0.0;
}

double RenewalDensity::mean() const {
    switch (family) {
        case Family::exponential:
            return 1.0 / rate;
        case Family::gamma:
            return shape / rate;
        case Family::weibull:
            return scale * std::tgamma(1.0 + 1.0 / shape);
    }
    return 0.0;
}

double RenewalDensity::sample(Rng& rng) const {
    switch (family) {
        case Family::exponential:
            return rng.exponential(rate);
        case Family::gamma:
            return rng.gamma(shape, rate);
        case Family::weibull:
            return scale * std::pow(-std::log(rng.uniform()), 1.0 / shape);
    }
    return 0.0;
}

std::string RenewalDensity::describe() const {
    switch (family) {
        case Family::exponential:
            return fmt::format("exponential(rate={})", rate);
        case Family::gamma:
            return fmt::format("gamma(shape={}, rate={})", shape, rate);
        case Family::weibull:
            return fmt::format("weibull(shape={}, scale={})", shape, scale);
    }
    return "unknown";
}

double renewal_intensity(const RenewalDensity& density, double w) {
    density.validate();
    if (w < 0.0) throw std::domain_error("renewal intensity at negative waiting time");
    const double surv = density.survival(w);
    if (surv <= 1e-12) {
        throw NumericalError(fmt::format("hazard undefined at w = {}: the waiting-time distribution is exhausted", w));
    }
    return density.pdf(w) / surv;
}

double VolterraGrid::at(double t) const {
    if (values.empty()) throw std::out_of_range("empty grid");
    if (t < 0.0 || t > horizon * (1.0 + 1e-12)) throw std::out_of_range("time outside the solved grid");
    const double pos = t / step;
    const auto i = std::min(static_cast<std::size_t>(pos), values.size() - 1);
    if (i + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(i);
    return values[i] + frac * (values[i + 1] - values[i]);
}

namespace {

std::size_t grid_intervals(double step, double horizon) {
    if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("grid step must be > 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("grid horizon must be > 0");
    const double ratio = horizon / step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError(fmt::format("horizon {} is not an integer multiple of the step {}", horizon, step));
    }
    return static_cast<std::size_t>(rounded);
}

}  // namespace

VolterraGrid solve_K(const Kernel& kernel, double step, double horizon) {
    validate(kernel);
    const std::size_t n_int = grid_intervals(step, horizon);
    const double h = step;
    std::vector<double> mu(n_int + 1);
    for (std::size_t j = 0; j <= n_int; ++j) mu[j] = kernel_eval(kernel, static_cast<double>(j) * h);

    const double diag = 1.0 - 0.5 * h * mu[0];
    if (!(diag > 0.0)) throw NumericalError("grid step too coarse for the kernel: 1 - h mu(0)/2 <= 0");

    std::vector<double> K(n_int + 1, 0.0);
    double interior_mu = 0.0;  // sum_{j=1}^{n-1} mu_j
    for (std::size_t n = 1; n <= n_int; ++n) {
        if (n >= 2) interior_mu += mu[n - 1];
        const std::span<const double> mu_tail(mu.data() + 1, n - 1);
        const std::span<const double> k_tail(K.data() + 1, n - 1);
        const double conv = n >= 2 ? simd::dot_reversed(mu_tail, k_tail) : 0.0;
        K[n] = h * (0.5 * mu[0] + interior_mu + 0.5 * mu[n] + conv) / diag;
    }
    return {h, static_cast<double>(n_int) * h, std::move(K)};
}

VolterraGrid solve_M(const RenewalDensity& density, const VolterraGrid& K) {
    density.validate();
    if (K.values.size() < 2) throw ConfigError("K grid needs at least one interval");
    const std::size_t n_int = K.values.size() - 1;
    const double h = K.step;
    std::vector<double> g(n_int + 1);
    for (std::size_t j = 0; j <= n_int; ++j) g[j] = density.pdf(static_cast<double>(j) * h);
    if (!std::isfinite(g[0])) {
        throw ConfigError("renewal density is unbounded at 0 (shape < 1); the trapezoidal solver needs g(0) finite");
    }
    const double diag = 1.0 - 0.5 * h * g[0];
    if (!(diag > 0.0)) throw NumericalError("grid step too coarse for the density: 1 - h g(0)/2 <= 0");

    std::vector<double> M(n_int + 1, 0.0);
    std::vector<double> total(n_int + 1, 1.0);  // 1 + K + M on nodes already solved
    total[0] = 1.0 + K.values[0];
    for (std::size_t n = 1; n <= n_int; ++n) {
        const std::span<const double> g_tail(g.data() + 1, n - 1);
        const std::span<const double> s_tail(total.data() + 1, n - 1);
        const double conv = n >= 2 ? simd::dot_reversed(g_tail, s_tail) : 0.0;
        M[n] = h * (0.5 * g[0] * (1.0 + K.values[n]) + conv + 0.5 * g[n] * total[0]) / diag;
        total[n] = 1.0 + K.values[n] + M[n];
    }
    return {h, K.horizon, std::move(M)};
}

double default_volterra_step(const Kernel& kernel) {
    double rate = 1.0;
    if (const auto* e = std::get_if<ExpKernel>(&kernel)) {
        rate = e->beta;
    } else {
        const auto& p = std::get<PowerLawKernel>(kernel);
        rate = p.p / p.c;  // |mu'(0) / mu(0)|
    }
    return 0.01 / std::max(rate, 1.0);
}

MeanFunctions solve_mean_functions(const RenewalDensity& density, const Kernel& kernel, double horizon,
                                   const MeanFunctionOptions& options) {
    double step = options.step > 0.0 ? options.step : default_volterra_step(kernel);
    // snap to a whole number of intervals
    step = horizon / std::max(1.0, std::round(horizon / step));

    MeanFunctions out;
    out.K = solve_K(kernel, step, horizon);
    out.M = solve_M(density, out.K);
    if (!options.self_check) {
        out.converged = true;
        return out;
    }
    for (int i = 0; i < options.max_halvings; ++i) {
        MeanFunctions finer;
        finer.K = solve_K(kernel, step / 2.0, horizon);
        finer.M = solve_M(density, finer.K);
        double change = 0.0;
        double scale = 1.0;
        for (std::size_t j = 0; j < out.K.values.size(); ++j) {
            change = std::max(change, std::abs(finer.K.values[2 * j] - out.K.values[j]));
            change = std::max(change, std::abs(finer.M.values[2 * j] - out.M.values[j]));
            scale = std::max({scale, std::abs(out.K.values[j]), std::abs(out.M.values[j])});
        }
        change /= scale;
        step /= 2.0;
        finer.halvings = i + 1;
        finer.change = change;
        finer.converged = change < options.tolerance;
        out = std::move(finer);
        if (out.converged) break;
    }
    return out;
}

}  // namespace hawkes
