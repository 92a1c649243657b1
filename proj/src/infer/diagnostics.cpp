#include "hawkes/infer/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "hawkes/core/error.hpp"
#include "hawkes/core/intensity.hpp"
#include "hawkes/simd/kernels.hpp"

namespace hawkes {

namespace {

DeclusterResult label(std::vector<double> rho, Rng& rng) {
    DeclusterResult out;
    out.background.reserve(rho.size());
    for (double r : rho) out.background.push_back(rng.uniform() < r);
    out.rho = std::move(rho);
    return out;
}

}  // namespace

DeclusterResult decluster(const HawkesModel& model, const EventSequence& events, Rng& rng) {
    model.validate();
    std::vector<double> rho(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        const double t = events[i];
        const double total = conditional_intensity(model, events, t, Limit::left);
        rho[i] = total > 0.0 ? model.baseline(t) / total : 1.0;
    }
    return label(std::move(rho), rng);
}

DeclusterResult decluster(const EtasModel& model, const EventSequence& events, Rng& rng) {
    model.validate();
    const auto times = events.times();
    std::vector<double> rho(times.size(), 1.0);
    if (!times.empty() && model.A > 0.0) {
        events.require_marks_at_least(model.m0);
        const auto marks = events.marks();
        const double nu0 = (model.p - 1.0) / model.c;
        std::vector<double> weights(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) weights[i] = model.productivity(marks[i]) * nu0;
        for (std::size_t i = 1; i < times.size(); ++i) {
            const double exc = simd::sum_power_decay(times.first(i), std::span<const double>(weights).first(i), times[i],
                                                     model.c, model.p);
            rho[i] = model.lambda / (model.lambda + exc);
        }
    }
    return label(std::move(rho), rng);
}

double kolmogorov_survival(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 1.0) {
        // P(K <= x) = sqrt(2 pi) / x * sum_k exp(-(2k-1)^2 pi^2 / (8 x^2))
        double cdf = 0.0;
        for (int k = 1; k <= 50; ++k) {
            const double term = std::exp(-std::pow(2.0 * k - 1.0, 2) * std::numbers::pi * std::numbers::pi / (8.0 * x * x));
            cdf += term;
            if (term < 1e-17 * cdf) break;
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-17) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

GofResult ks_test_exponential(std::vector<double> values) {
    GofResult out;
    out.rescaled_interarrivals = values;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = -std::expm1(-std::max(values[i], 0.0));
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    out.ks_statistic = d;
    const double sn = std::sqrt(n);
    out.p_value = kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d);
    return out;
}

GofResult gof_rescaling(const HawkesModel& model, const EventSequence& events, double T) {
    if (events.size() < 10) throw DataError("goodness of fit needs at least 10 events");
    const auto window = events.horizon() == T ? events : events.with_horizon(T);
    const auto lambdas = rescale_times(model, window);
    std::vector<double> increments(lambdas.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        increments[i] = lambdas[i] - prev;
        prev = lambdas[i];
    }
    return ks_test_exponential(std::move(increments));
}

}  // namespace hawkes
