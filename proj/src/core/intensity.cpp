#include "hawkes/core/intensity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hawkes/simd/kernels.hpp"

namespace hawkes {

namespace {

void require_in_window(const EventSequence& events, double t) {
    if (!(t >= 0.0 && t <= events.horizon())) {
        throw std::out_of_range("time " + std::to_string(t) + " outside observation window [0, " +
                                std::to_string(events.horizon()) + "]");
    }
}

std::size_t history_size(const EventSequence& events, double t, Limit limit) {
    return limit == Limit::left ? events.count_before(t) : events.count_through(t);
}

// sum_{i < n} mu(t - T_i)
double excitation_sum(const Kernel& kernel, std::span<const double> history, double t) {
    if (history.empty()) return 0.0;
    if (const auto* e = std::get_if<ExpKernel>(&kernel)) {
        return e->alpha * simd::sum_exp_decay(history, t, e->beta);
    }
    const auto& p = std::get<PowerLawKernel>(kernel);
    return p.K * std::pow(p.c, -p.p) * simd::sum_power_decay(history, {}, t, p.c, p.p);
}

// sum_{i < n} integral_0^{t - T_i} mu
double excitation_integral(const Kernel& kernel, std::span<const double> history, double t) {
    if (history.empty()) return 0.0;
    const auto n = static_cast<double>(history.size());
    if (const auto* e = std::get_if<ExpKernel>(&kernel)) {
        return e->alpha / e->beta * (n - simd::sum_exp_decay(history, t, e->beta));
    }
    const auto& p = std::get<PowerLawKernel>(kernel);
    return p.K * std::pow(p.c, 1.0 - p.p) / (p.p - 1.0) *
           (n - simd::sum_power_decay(history, {}, t, p.c, p.p - 1.0));
}

double baseline_integral(const HawkesModel& model, double t) {
    double value = model.lambda * t;
    if (const auto* e = std::get_if<ExpKernel>(&model.kernel)) {
        value += -(model.initial_intensity() - model.lambda) / e->beta * std::expm1(-e->beta * t);
    }
    return value;
}

}  // namespace

double conditional_intensity(const HawkesModel& model, const EventSequence& events, double t, Limit limit) {
    require_in_window(events, t);
    const auto history = events.times().first(history_size(events, t, limit));
    return model.baseline(t) + excitation_sum(model.kernel, history, t);
}

double compensator(const HawkesModel& model, const EventSequence& events, double t) {
    require_in_window(events, t);
    const auto history = events.times().first(events.count_before(t));
    return baseline_integral(model, t) + excitation_integral(model.kernel, history, t);
}

std::vector<double> rescale_times(const HawkesModel& model, const EventSequence& events) {
    const auto times = events.times();
    std::vector<double> out(times.size());
    if (const auto* e = std::get_if<ExpKernel>(&model.kernel)) {
        // decayed[i] = sum_{j<i} e^{-beta (t_i - t_j)}, carried forward in O(1) per event
        double decayed = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (i > 0) decayed = (decayed + 1.0) * std::exp(-e->beta * (times[i] - times[i - 1]));
            out[i] = baseline_integral(model, times[i]) +
                     e->alpha / e->beta * (static_cast<double>(i) - decayed);
        }
        return out;
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        out[i] = baseline_integral(model, times[i]) + excitation_integral(model.kernel, times.first(i), times[i]);
    }
    return out;
}

double excitation(const NonlinearSpec& spec, const EventSequence& events, double t, Limit limit) {
    require_in_window(events, t);
    const auto history = events.times().first(history_size(events, t, limit));
    if (history.empty()) return 0.0;
    return spec.kernel.alpha * simd::sum_exp_decay(history, t, spec.kernel.beta);
}

double conditional_intensity(const NonlinearSpec& spec, const EventSequence& events, double t, Limit limit) {
    return spec.phi(spec.lambda, excitation(spec, events, t, limit));
}

}  // namespace hawkes
