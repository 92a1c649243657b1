#include "hawkes/gmm/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "../infer/multistart.hpp"
#include "hawkes/core/error.hpp"

namespace hawkes {

std::size_t BinSeries::lag() const {
    if (!(tau > 0.0)) throw ConfigError("bin width tau must be > 0");
    return static_cast<std::size_t>(std::max(0.0, std::ceil(delta / tau - 1e-9)));
}

BinSeries bin_counts(const EventSequence& events, double tau, std::size_t n_discard, double delta) {
    if (!std::isfinite(tau) || !(tau > 0.0)) throw ConfigError("bin width tau must be > 0");
    if (!std::isfinite(delta) || delta < 0.0) throw ConfigError("lag delta must be >= 0");
    const double ratio = events.horizon() / tau;
    const double whole = std::round(ratio);
    BinSeries out;
    out.tau = tau;
    out.delta = delta;
    std::size_t n_bins = 0;
    if (std::abs(ratio - whole) <= 1e-9 * std::max(1.0, ratio)) {
        n_bins = static_cast<std::size_t>(whole);
    } else {
        n_bins = static_cast<std::size_t>(std::floor(ratio));
        out.partial_bin_dropped = true;
    }
    std::vector<std::uint64_t> counts(n_bins, 0);
    for (double t : events.times()) {
        const double pos = std::ceil(t / tau) - 1.0;
        const auto i = pos < 0.0 ? std::size_t{0} : static_cast<std::size_t>(pos);
        if (i < n_bins) ++counts[i];
    }
    if (n_discard >= n_bins && n_bins > 0) {
        throw ConfigError(fmt::format("discarding {} of {} bins leaves nothing", n_discard, n_bins));
    }
    out.n_discarded = n_discard;
    out.counts.assign(counts.begin() + static_cast<std::ptrdiff_t>(std::min(n_discard, n_bins)), counts.end());
    return out;
}

std::size_t default_discard(std::size_t n_bins) noexcept { return n_bins / 10; }

MomentTriple theoretical_moments(double lambda, double alpha, double beta, double tau, double delta) {
    if (!std::isfinite(lambda) || !(lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (!std::isfinite(beta) || !(beta > 0.0)) throw ConfigError("beta must be > 0");
    if (!std::isfinite(alpha) || alpha < 0.0) throw ConfigError("alpha must be >= 0");
    if (alpha >= beta) throw ConfigError("long-run moments need alpha < beta (stationarity)");
    if (!std::isfinite(tau) || !(tau > 0.0)) throw ConfigError("bin width tau must be > 0");
    if (!std::isfinite(delta) || delta < 0.0) throw ConfigError("lag delta must be >= 0");

    const double kappa = beta - alpha;
    const double ratio = beta / kappa;
    const double ratio2 = ratio * ratio;
    const double mean_rate = lambda * ratio;
    const double decay = -std::expm1(-kappa * tau);  // 1 - e^{-kappa tau}

    MomentTriple w;
    w.kind = MomentTriple::Kind::theoretical;
    w.m1 = lambda * tau * ratio;
    w.m2 = mean_rate * (tau * ratio2 + (1.0 - ratio2) * decay / kappa);
    const double k2 = kappa * kappa;
    w.m3 = lambda * beta * alpha * (2.0 * beta - alpha) * decay * decay / (2.0 * k2 * k2) * std::exp(-kappa * delta);
    return w;
}

MomentTriple empirical_moments(const std::vector<std::uint64_t>& counts, std::size_t lag) {
    const std::size_t n = counts.size();
    if (n < 2) throw ConfigError("empirical moments need at least 2 bins");
    MomentTriple m;
    m.kind = MomentTriple::Kind::empirical;
    double s1 = 0.0;
    double s2 = 0.0;
    for (auto k : counts) {
        const double v = static_cast<double>(k);
        s1 += v;
        s2 += v * v;
    }
    const double nd = static_cast<double>(n);
    m.m1 = s1 / nd;
    m.m2 = s2 / nd - m.m1 * m.m1;
    if (lag == 0) return m;
    if (lag + 2 > n) throw ConfigError(fmt::format("lag of {} bins needs at least {} bins", lag, lag + 2));
    const std::size_t n_star = n - lag;
    double cross = 0.0;
    double head = 0.0;
    double tail = 0.0;
    for (std::size_t i = 0; i < n_star; ++i) {
        const double a = static_cast<double>(counts[i]);
        const double b = static_cast<double>(counts[i + lag]);
        cross += a * b;
        head += a;
        tail += b;
    }
    const double ns = static_cast<double>(n_star);
    m.m3 = cross / ns - (head / ns) * (tail / ns);
    return m;
}

MomentTriple empirical_moments(const BinSeries& bins) { return empirical_moments(bins.counts, bins.lag()); }

std::vector<double> gmm_start(const MomentTriple& m, double tau) {
    const double dispersion = m.m1 > 0.0 ? m.m2 / m.m1 : 1.0;
    const double eta = std::clamp(1.0 - 1.0 / std::sqrt(std::max(dispersion, 1.0)), 0.05, 0.9);
    const double beta = 2.0 / tau;
    const double lambda = std::max(m.m1, 1e-3) / tau * (1.0 - eta);
    return {lambda, eta * beta, beta};
}

double default_gmm_delta(const MomentTriple& m, double tau) {
    const auto s = gmm_start(m, tau);
    const double bins = std::max(2.0, std::round(5.0 / (s[2] - s[1]) / tau));
    return bins * tau;
}

FitResult fit_gmm_moments(const MomentTriple& m, double tau, double gap, const GmmOptions& options) {
    if (!(m.m1 > 0.0)) throw DataError("GMM fit needs a positive mean count");
    if (!(m.m2 > 0.0)) throw DataError("GMM fit needs a positive count variance m2");

    detail::FitProblem p;
    p.names = {"lambda", "alpha", "beta"};
    p.start = gmm_start(m, tau);
    p.to_natural = [](const std::vector<double>& x) {
        const double beta = std::exp(x[1]);
        const double share = 1.0 / (1.0 + std::exp(-x[2]));
        return std::vector<double>{std::exp(x[0]), share * beta, beta};
    };
    p.to_search = [](const std::vector<double>& th) {
        const double share = th[1] / th[2];
        return std::vector<double>{std::log(th[0]), std::log(th[2]), std::log(share / (1.0 - share))};
    };
    p.objective = [&](const std::vector<double>& th) {
        // beta is capped at 1e3 / tau: beyond it w3 is zero to working precision and
        // a data set with m3 <= 0 would otherwise send the simplex off to infinity
        const bool usable = th[0] > 0.0 && std::isfinite(th[0]) && th[2] > 0.0 && th[2] <= 1e3 / tau && th[1] < th[2];
        if (!usable) return -std::numeric_limits<double>::infinity();
        const auto w = theoretical_moments(th[0], th[1], th[2], tau, gap);
        const double r1 = m.m1 - w.m1;
        const double r2 = m.m2 - w.m2;
        const double r3 = m.m3 - w.m3;
        return -(r1 * r1 + r2 * r2 + r3 * r3);
    };
    FitResult fit = detail::run_multistart(p, options.restarts, options.seed, options.optimizer);
    fit.stationarity = StationarityReport{true, fit.theta[1] / fit.theta[2]};
    if (!(m.m3 > 0.0)) fit.warnings.emplace_back("m3 <= 0: alpha is weakly identified");
    return fit;
}

FitResult fit_gmm(const BinSeries& bins, const GmmOptions& options) {
    const std::size_t lag = bins.lag();
    if (lag < 1) throw ConfigError("GMM fit needs a lag delta > 0");
    const MomentTriple m = empirical_moments(bins);
    FitResult fit = fit_gmm_moments(m, bins.tau, static_cast<double>(lag - 1) * bins.tau, options);
    if (bins.partial_bin_dropped) fit.warnings.emplace_back("trailing partial bin dropped");
    return fit;
}

}  // namespace hawkes
