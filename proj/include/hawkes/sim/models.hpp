#pragma once

#include <vector>

#include "hawkes/core/kernel.hpp"
#include "hawkes/renewal/renewal.hpp"

namespace hawkes {

class Rng;

/// Positive jump-size law for the dynamic contagion process.
struct JumpDistribution {
    enum class Kind { constant, exponential };
    Kind kind = Kind::exponential;
    double value = 1.0;  ///< the constant, or the exponential mean

    [[nodiscard]] static JumpDistribution constant(double v) { return {Kind::constant, v}; }
    [[nodiscard]] static JumpDistribution exponential_mean(double mean) { return {Kind::exponential, mean}; }

    [[nodiscard]] double mean() const noexcept { return value; }
    double sample(Rng& rng) const;
};

/// Dynamic contagion: lambda*(t) = a + (lambda0 - a) e^{-delta t} + sum Y_i e^{-delta (t - T_i)}
///                                     + sum X_i e^{-delta (t - S_i)},
/// with external shocks S_i from a Poisson(rho) stream.
struct DynamicContagionModel {
    double a = 0.5;
    double lambda0 = 1.0;
    double delta = 1.0;
    double rho = 1.0;
    JumpDistribution self_jump = JumpDistribution::exponential_mean(1.0);      ///< G, law of Y
    JumpDistribution external_jump = JumpDistribution::exponential_mean(1.0);  ///< H, law of X

    /// Checks a >= 0, delta > 0, rho > 0 and lambda0 >= a. The strict
    /// lambda0 > a of the usual definition is relaxed to allow the
    /// lambda0 = a Poisson reduction.
    void validate() const;
};

/// Temporal ETAS: ground intensity lambda + sum A e^{alpha (M_i - m0)} nu(t - T_i) with the
/// normalised Omori-Utsu density nu(t) = ((p-1)/c)(1 + t/c)^{-p}, and i.i.d.
/// Gutenberg-Richter magnitudes M ~ m0 + Exp(beta). beta = +infinity pins every mark at m0.
struct EtasModel {
    double lambda = 0.1;
    double A = 0.5;
    double alpha = 1.0;
    double beta = 2.0;
    double m0 = 3.0;
    double c = 0.01;
    double p = 1.5;

    void validate() const;
    [[nodiscard]] double productivity(double mark) const;  ///< eta(m)
    [[nodiscard]] double omori_density(double dt) const;   ///< nu(dt)
    [[nodiscard]] double omori_cdf(double dt) const;       ///< integral_0^dt nu
    [[nodiscard]] double mark_log_density(double mark) const;
    /// E[eta(M)] = A beta / (beta - alpha); +infinity when beta <= alpha.
    [[nodiscard]] double mean_productivity() const;
    /// beta > alpha and E[eta(M)] < 1.
    [[nodiscard]] bool subcritical() const;
};

/// Discrete-time Hawkes: Y_t ~ p(. ; lambda*_t, psi) with
/// lambda*_t = lambda + eta * sum_{s>=1} g(s) Y_{t-s}.
struct DiscreteModel {
    enum class Emission { poisson, negative_binomial };

    double lambda = 1.0;
    double eta = 0.0;
    std::vector<double> g{1.0};  ///< g[s-1] = g(s), s = 1..L; must sum to 1
    Emission emission = Emission::poisson;
    double psi = 1.0;  ///< negative binomial dispersion: variance m + m^2 / psi

    void validate() const;
    /// lambda*_t for every t = 1..T given counts Y_1..Y_T (index 0 holds t = 1).
    [[nodiscard]] std::vector<double> intensities(const std::vector<double>& counts) const;
};

/// Renewal immigrants with Hawkes offspring clusters.
struct RenewalHawkesModel {
    RenewalDensity density = RenewalDensity::exponential(1.0);
    Kernel kernel = ExpKernel{0.0, 1.0};

    void validate() const;
};

}  // namespace hawkes
