#pragma once

#include <string>
#include <vector>

#include "hawkes/core/kernel.hpp"

namespace hawkes {

class Rng;

/// Immigrant waiting-time law of a renewal Hawkes process.
struct RenewalDensity {
    enum class Family { exponential, gamma, weibull };

    Family family = Family::exponential;
    double rate = 1.0;   ///< exponential rate, or gamma rate
    double shape = 1.0;  ///< gamma / weibull shape
    double scale = 1.0;  ///< weibull scale

    [[nodiscard]] static RenewalDensity exponential(double rate);
    [[nodiscard]] static RenewalDensity gamma(double shape, double rate);
    [[nodiscard]] static RenewalDensity weibull(double shape, double scale);

    [[nodiscard]] double pdf(double w) const;
    [[nodiscard]] double cdf(double w) const;
    /// 1 - cdf, evaluated without cancellation.
    [[nodiscard]] double survival(double w) const;
    [[nodiscard]] double mean() const;
    [[nodiscard]] double sample(Rng& rng) const;
    [[nodiscard]] std::string describe() const;
    void validate() const;
};

/// Hazard g(w) / (1 - G(w)). Throws NumericalError once G(w) >= 1 - 1e-12.
[[nodiscard]] double renewal_intensity(const RenewalDensity& density, double w);

/// A function sampled on {0, h, 2h, ..., horizon}.
struct VolterraGrid {
    double step = 0.01;
    double horizon = 0.0;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double time(std::size_t i) const noexcept { return static_cast<double>(i) * step; }
    /// Linear interpolation between grid nodes.
    [[nodiscard]] double at(double t) const;
};

/// K(t) = integral_0^t (1 + K(t - s)) mu(s) ds: the expected number of
/// descendants of one arrival at 0 that occur within [0, t].
/// Trapezoidal rule, solved by forward substitution; K(0) = 0.
[[nodiscard]] VolterraGrid solve_K(const Kernel& kernel, double step, double horizon);

/// M(t) = integral_0^t (1 + K(t - s) + M(t - s)) g(s) ds: E[N(t)] of the renewal
/// Hawkes process. K must come from solve_K on the same grid.
[[nodiscard]] VolterraGrid solve_M(const RenewalDensity& density, const VolterraGrid& K);

struct MeanFunctions {
    VolterraGrid K;
    VolterraGrid M;
    int halvings = 0;      ///< step halvings performed by the self-check
    double change = 0.0;   ///< sup-norm change of (K, M) at the last halving, relative to max(1, sup |K|, sup |M|)
    bool converged = false;
};

struct MeanFunctionOptions {
    double step = 0.0;          ///< 0 picks 0.01 / max(decay rate, 1)
    double tolerance = 1e-5;    ///< relative sup-norm change accepted between successive halvings
    int max_halvings = 4;
    bool self_check = true;
};

/// Default grid step for a kernel: 0.01 / max(decay rate, 1).
[[nodiscard]] double default_volterra_step(const Kernel& kernel);

/// K and M on [0, horizon]; with self_check the step is halved until the
/// solution changes by less than the tolerance in sup-norm.
[[nodiscard]] MeanFunctions solve_mean_functions(const RenewalDensity& density, const Kernel& kernel, double horizon,
                                                 const MeanFunctionOptions& options = {});

}  // namespace hawkes
