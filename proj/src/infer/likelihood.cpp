#include "hawkes/infer/likelihood.hpp"

#include <cmath>
#include <span>

#include <fmt/format.h>

#include "hawkes/core/error.hpp"
#include "hawkes/multivariate/detail.hpp"
#include "hawkes/simd/kernels.hpp"

namespace hawkes {

namespace {

void check_window(const EventSequence& events, double T) {
    if (!std::isfinite(T) || T < 0.0) throw ConfigError("observation window T must be finite and >= 0");
    if (!events.empty() && events.times().back() > T) {
        throw ConfigError(fmt::format("T = {} is before the last arrival at {}", T, events.times().back()));
    }
}

// Integral of the deterministic background lambda + (lambda0 - lambda) e^{-beta t} over [0, T].
double background_integral(double lambda, double lambda0, double beta, double T) {
    double value = lambda * T;
    if (lambda0 != lambda) value += (lambda0 - lambda) / beta * -std::expm1(-beta * T);
    return value;
}

}  // namespace

LikelihoodValue loglik_general(const HawkesModel& model, const EventSequence& events, double T) {
    model.validate();
    check_window(events, T);
    const auto times = events.times();
    const std::size_t n = times.size();
    const bool no_excitation = branching_ratio(model.kernel) == 0.0;

    double log_sum = 0.0;
    if (no_excitation && model.initial_intensity() == model.lambda) {
        if (n > 0) {
            if (!(model.lambda > 0.0)) return LikelihoodValue::minus_infinity();
            log_sum = static_cast<double>(n) * std::log(model.lambda);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double value = model.baseline(times[i]);
            for (std::size_t j = 0; j < i; ++j) value += kernel_eval(model.kernel, times[i] - times[j]);
            if (!(value > 0.0)) return LikelihoodValue::minus_infinity();
            log_sum += std::log(value);
        }
    }

    double beta = 1.0;
    if (const auto* e = std::get_if<ExpKernel>(&model.kernel)) beta = e->beta;
    double comp = background_integral(model.lambda, model.initial_intensity(), beta, T);
    if (!no_excitation) {
        for (double t : times) comp += kernel_integral(model.kernel, T - t);
    }
    return {log_sum - comp, true};
}

LikelihoodValue loglik_exp_fast(const ExpParams& p, const EventSequence& events, double T) {
    HawkesModel{p.lambda, p.lambda0, ExpKernel{p.alpha, p.beta}}.validate();
    check_window(events, T);
    const auto times = events.times();
    const std::size_t n = times.size();

    double log_sum = 0.0;
    if (p.alpha == 0.0 && p.lambda0 == p.lambda) {
        if (n > 0) {
            if (!(p.lambda > 0.0)) return LikelihoodValue::minus_infinity();
            log_sum = static_cast<double>(n) * std::log(p.lambda);
        }
    } else {
        std::vector<double> intensity(n);
        double excess = 0.0;
        double prev = 0.0;
        const double initial = p.lambda0 - p.lambda;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) excess = std::exp(-p.beta * (times[i] - prev)) * (excess + p.alpha);
            prev = times[i];
            double value = p.lambda + excess;
            if (initial != 0.0) value += initial * std::exp(-p.beta * times[i]);
            if (!(value > 0.0)) return LikelihoodValue::minus_infinity();
            intensity[i] = value;
        }
        log_sum = simd::sum_log(intensity);
    }

    double comp = background_integral(p.lambda, p.lambda0, p.beta, T);
    if (p.alpha != 0.0 && n > 0) {
        // sum_i (1 - e^{-beta (T - t_i)})
        comp += p.alpha / p.beta * (static_cast<double>(n) - simd::sum_exp_decay(times, T, p.beta));
    }
    return {log_sum - comp, true};
}

LikelihoodValue loglik_multivariate(const MultivariateHawkesModel& model, const EventSequence& events, double T) {
    model.validate();
    check_window(events, T);
    if (events.empty()) {
        double comp = 0.0;
        for (double b : model.baselines) comp += b * T;
        return {-comp, true};
    }
    events.require_dims_below(model.d);

    const auto d = static_cast<std::size_t>(model.d);
    const auto times = events.times();
    const auto dims = events.dims();
    std::vector<double> excess(d * d, 0.0);
    std::vector<std::vector<double>> history(d);
    std::vector<double> intensity(times.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double dt = times[i] - prev;
        prev = times[i];
        for (std::size_t m = 0; m < d * d; ++m) {
            if (const auto* e = std::get_if<ExpKernel>(&model.kernels[m])) excess[m] *= std::exp(-e->beta * dt);
        }
        const auto k = static_cast<std::size_t>(dims[i]);
        double value = model.baselines[k];
        for (std::size_t j = 0; j < d; ++j) {
            const Kernel& kern = model.kernels[j * d + k];
            value += std::holds_alternative<ExpKernel>(kern) ? excess[j * d + k]
                                                             : detail::kernel_sum(kern, history[j], times[i]);
        }
        if (!(value > 0.0)) return LikelihoodValue::minus_infinity();
        intensity[i] = value;
        history[k].push_back(times[i]);
        for (std::size_t m = 0; m < d; ++m) {
            if (const auto* e = std::get_if<ExpKernel>(&model.kernels[k * d + m])) excess[k * d + m] += e->alpha;
        }
    }

    double comp = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        comp += model.baselines[k] * T;
        for (std::size_t j = 0; j < d; ++j) {
            comp += detail::kernel_integral_sum(model.kernels[j * d + k], history[j], T);
        }
    }
    return {simd::sum_log(intensity) - comp, true};
}

LikelihoodValue loglik_etas(const EtasModel& model, const EventSequence& events, double T) {
    model.validate();
    check_window(events, T);
    const auto times = events.times();
    const std::size_t n = times.size();
    if (n == 0) return {-model.lambda * T, true};
    events.require_marks_at_least(model.m0);
    const auto marks = events.marks();

    const double nu0 = (model.p - 1.0) / model.c;
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) weights[i] = model.productivity(marks[i]) * nu0;

    std::vector<double> intensity(n);
    double mark_term = 0.0;
    double comp = model.lambda * T;
    for (std::size_t i = 0; i < n; ++i) {
        double value = model.lambda;
        if (i > 0 && model.A > 0.0) {
            value += simd::sum_power_decay(times.first(i), std::span<const double>(weights).first(i), times[i], model.c,
                                           model.p);
        }
        intensity[i] = value;
        if (!std::isinf(model.beta)) mark_term += model.mark_log_density(marks[i]);
        if (model.A > 0.0) comp += model.productivity(marks[i]) * model.omori_cdf(T - times[i]);
    }
    return {simd::sum_log(intensity) + mark_term - comp, true};
}

LikelihoodValue loglik_discrete(const DiscreteModel& model, const std::vector<std::uint64_t>& counts) {
    model.validate();
    std::vector<double> y(counts.begin(), counts.end());
    const auto rates = model.intensities(y);
    double total = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double m = rates[t];
        const double k = y[t];
        if (model.emission == DiscreteModel::Emission::poisson) {
            total += k * std::log(m) - m - std::lgamma(k + 1.0);
        } else {
            const double psi = model.psi;
            total += std::lgamma(k + psi) - std::lgamma(psi) - std::lgamma(k + 1.0) - psi * std::log1p(m / psi) +
                     k * (std::log(m) - std::log(psi + m));
        }
    }
    return {total, true};
}

}  // namespace hawkes
