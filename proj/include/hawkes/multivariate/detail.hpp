#pragma once

#include <span>
#include <vector>

#include "hawkes/core/events.hpp"
#include "hawkes/core/kernel.hpp"

// Helpers shared by the multivariate intensity, simulator and likelihood.
namespace hawkes::detail {

/// Arrival times grouped by dimension label.
[[nodiscard]] std::vector<std::vector<double>> split_by_dim(const EventSequence& events, int d);
/// sum over history of mu(t - T_i).
[[nodiscard]] double kernel_sum(const Kernel& kernel, std::span<const double> history, double t);
/// sum over history of integral_0^{t - T_i} mu.
[[nodiscard]] double kernel_integral_sum(const Kernel& kernel, std::span<const double> history, double t);

}  // namespace hawkes::detail
