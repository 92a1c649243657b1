#pragma once

#include <optional>

#include "hawkes/core/kernel.hpp"

namespace hawkes {

/// Linear Hawkes process: lambda*(t) = lambda + (lambda0 - lambda) e^{-beta t} + sum_{T_i < t} mu(t - T_i).
///
/// The initial-intensity term needs an exponential kernel (its decay rate is
/// the kernel's beta); with a power-law kernel lambda0 must equal lambda.
/// lambda = 0 is accepted so that degenerate "no arrivals" configurations
/// can be simulated.
struct HawkesModel {
    double lambda = 1.0;
    std::optional<double> lambda0;  ///< defaults to lambda
    Kernel kernel = ExpKernel{0.0, 1.0};

    [[nodiscard]] double initial_intensity() const noexcept { return lambda0.value_or(lambda); }
    /// Deterministic part lambda + (lambda0 - lambda) e^{-beta t}.
    [[nodiscard]] double baseline(double t) const;
    void validate() const;
};

/// Monotone non-decreasing rate transform phi for nonlinear Hawkes processes.
struct RateTransform {
    enum class Kind {
        linear,    ///< lambda + x; negative values are an error
        relu,      ///< max(lambda + x, 0)
        softplus,  ///< log(1 + exp(lambda + x))
    };
    Kind kind = Kind::relu;

    [[nodiscard]] double operator()(double baseline, double x) const;
};

/// lambda*(t) = phi(lambda + sum_{T_i < t} mu(t - T_i)) with a signed exponential kernel.
struct NonlinearSpec {
    double lambda = 1.0;
    ExpKernel kernel{0.0, 1.0};
    RateTransform phi{};

    void validate() const;
};

struct StationarityReport {
    bool stationary = false;
    double branching_ratio = 0.0;
};

/// eta = integral of mu; stationary iff eta < 1.
[[nodiscard]] StationarityReport is_stationary(const HawkesModel& model);

}  // namespace hawkes
