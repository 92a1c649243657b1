#pragma once

#include <vector>

#include "hawkes/core/events.hpp"
#include "hawkes/core/model.hpp"

namespace hawkes {

enum class Limit {
    left,   ///< sum over T_i < t (the predictable intensity)
    right,  ///< sum over T_i <= t (the value just after a jump at t)
};

/// lambda*(t) for 0 <= t <= events.horizon(). At t = 0 the value is lambda0.
[[nodiscard]] double conditional_intensity(const HawkesModel& model, const EventSequence& events, double t,
                                           Limit limit = Limit::left);

/// Lambda(t) = integral_0^t lambda*(s) ds, in closed form for both kernel families.
[[nodiscard]] double compensator(const HawkesModel& model, const EventSequence& events, double t);

/// Lambda(t_i) for every arrival. Under the true model the increments are i.i.d. Exp(1).
[[nodiscard]] std::vector<double> rescale_times(const HawkesModel& model, const EventSequence& events);

/// Excitation sum x(t) = sum_{T_i < t} alpha e^{-beta (t - T_i)} of a nonlinear spec.
[[nodiscard]] double excitation(const NonlinearSpec& spec, const EventSequence& events, double t,
                                Limit limit = Limit::left);
[[nodiscard]] double conditional_intensity(const NonlinearSpec& spec, const EventSequence& events, double t,
                                           Limit limit = Limit::left);

}  // namespace hawkes
