#include "hawkes/sim/models.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <span>

#include "hawkes/core/error.hpp"
#include "hawkes/sim/rng.hpp"
#include "hawkes/simd/kernels.hpp"

namespace hawkes {

namespace {
bool positive(double v) { return std::isfinite(v) && v > 0.0; }
}  // namespace

double JumpDistribution::sample(Rng& rng) const {
    if (kind == Kind::constant || value == 0.0) return value;
    return -value * std::log(rng.uniform());
}

void DynamicContagionModel::validate() const {
    if (!std::isfinite(a) || a < 0.0) throw ConfigError("dynamic contagion: a must be >= 0");
    if (!std::isfinite(lambda0) || lambda0 < a) throw ConfigError("dynamic contagion: lambda0 must be >= a");
    if (!positive(delta)) throw ConfigError("dynamic contagion: delta must be > 0");
    if (!positive(rho)) throw ConfigError("dynamic contagion: rho must be > 0");
    for (const auto* j : {&self_jump, &external_jump}) {
        if (!std::isfinite(j->value) || j->value < 0.0) {
            throw ConfigError("dynamic contagion: jump sizes must be non-negative");
        }
    }
}

void EtasModel::validate() const {
    if (!positive(lambda)) throw ConfigError("ETAS: lambda must be > 0");
    if (!std::isfinite(A) || A < 0.0) throw ConfigError("ETAS: A must be >= 0");
    if (!positive(alpha)) throw ConfigError("ETAS: alpha must be > 0");
    if (!(beta > 0.0)) throw ConfigError("ETAS: beta must be > 0");
    if (!positive(m0)) throw ConfigError("ETAS: m0 must be > 0");
    if (!positive(c)) throw ConfigError("ETAS: c must be > 0");
    if (!std::isfinite(p) || p <= 1.0) throw ConfigError("ETAS: p must be > 1");
}

double EtasModel::productivity(double mark) const { return A * std::exp(alpha * (mark - m0)); }

double EtasModel::omori_density(double dt) const { return (p - 1.0) / c * std::pow(1.0 + dt / c, -p); }

double EtasModel::omori_cdf(double dt) const { return -std::expm1((1.0 - p) * std::log1p(dt / c)); }

double EtasModel::mark_log_density(double mark) const {
    if (mark < m0) return -std::numeric_limits<double>::infinity();
    return std::log(beta) - beta * (mark - m0);
}

double EtasModel::mean_productivity() const {
    if (std::isinf(beta)) return A;
    if (beta <= alpha) return std::numeric_limits<double>::infinity();
    return A * beta / (beta - alpha);
}

bool EtasModel::subcritical() const { return mean_productivity() < 1.0; }

void DiscreteModel::validate() const {
    if (!positive(lambda)) throw ConfigError("discrete model: lambda must be > 0");
    if (!std::isfinite(eta) || eta < 0.0) throw ConfigError("discrete model: eta must be >= 0");
    if (g.empty()) throw ConfigError("discrete model: g needs at least one lag");
    double total = 0.0;
    for (double v : g) {
        if (!std::isfinite(v) || v < 0.0) throw ConfigError("discrete model: g must be a probability mass function");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("discrete model: g must sum to 1");
    if (emission == Emission::negative_binomial && !positive(psi)) {
        throw ConfigError("discrete model: dispersion psi must be > 0");
    }
}

std::vector<double> DiscreteModel::intensities(const std::vector<double>& counts) const {
    std::vector<double> out(counts.size());
    const std::span<const double> gs(g);
    for (std::size_t t = 0; t < counts.size(); ++t) {
        const std::size_t lags = std::min(g.size(), t);
        double excitation = 0.0;
        if (lags > 0) {
            excitation = simd::dot_reversed(gs.first(lags), std::span<const double>(counts.data() + (t - lags), lags));
        }
        out[t] = lambda + eta * excitation;
    }
    return out;
}

void RenewalHawkesModel::validate() const {
    density.validate();
    hawkes::validate(kernel);
}

}  // namespace hawkes
