#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hawkes/core/events.hpp"
#include "hawkes/infer/fit.hpp"

namespace hawkes {

/// Event counts over consecutive bins of width tau.
struct BinSeries {
    std::vector<std::uint64_t> counts;
    double tau = 1.0;
    double delta = 0.0;            ///< lag used for the covariance moment
    std::size_t n_discarded = 0;   ///< leading bins dropped
    bool partial_bin_dropped = false;

    /// Index lag Delta = ceil(delta / tau).
    [[nodiscard]] std::size_t lag() const;
};

/// K_i = #{t in ((i-1) tau, i tau]} (an arrival at exactly 0 counts in the
/// first bin), then the first n_discard bins are dropped. A trailing partial
/// bin is dropped and flagged. ConfigError for tau <= 0.
[[nodiscard]] BinSeries bin_counts(const EventSequence& events, double tau, std::size_t n_discard, double delta = 0.0);

/// 10% of the bins, rounded down.
[[nodiscard]] std::size_t default_discard(std::size_t n_bins) noexcept;

struct MomentTriple {
    enum class Kind { theoretical, empirical };
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    Kind kind = Kind::theoretical;
};

/// Long-run mean, variance and lag covariance of the count over a bin of width tau,
/// with the second bin starting delta after the end of the first. Needs 0 <= alpha < beta.
///   w1 = lambda beta tau / kappa,  kappa = beta - alpha
///   w2 = (lambda beta / kappa) (tau beta^2/kappa^2 + (1 - beta^2/kappa^2)(1 - e^{-kappa tau}) / kappa)
///   w3 = lambda beta alpha (2 beta - alpha)(e^{-kappa tau} - 1)^2 / (2 kappa^4) e^{-kappa delta}
[[nodiscard]] MomentTriple theoretical_moments(double lambda, double alpha, double beta, double tau, double delta);

/// m1, m2 over all bins and m3 over the pairs (K_i, K_{i+lag}), each of its
/// two factors centred by its own window mean. m3 is 0 when lag = 0.
[[nodiscard]] MomentTriple empirical_moments(const BinSeries& bins);
[[nodiscard]] MomentTriple empirical_moments(const std::vector<std::uint64_t>& counts, std::size_t lag);

struct GmmOptions {
    int restarts = 10;
    std::uint64_t seed = 20240601ULL;
    NelderMeadOptions optimizer{1.0, 2.0, 0.5, 0.5, 1e-16, 1e-8, 20000, 0.25, 1e12};
};

/// Starting point (lambda, alpha, beta) guessed from the dispersion m2 / m1.
[[nodiscard]] std::vector<double> gmm_start(const MomentTriple& m, double tau);

/// Lag delta = 5 / (beta - alpha) at the starting point, as a whole number of bins (at least 2).
[[nodiscard]] double default_gmm_delta(const MomentTriple& m, double tau);

/// Minimises |m - w(theta)|^2 over lambda > 0, 0 <= alpha < beta <= 1e3 / tau, searching
/// (log lambda, log beta, logit(alpha / beta)). theta = (lambda, alpha, beta);
/// loglik holds minus the criterion. gap is the delta passed to theoretical_moments.
[[nodiscard]] FitResult fit_gmm_moments(const MomentTriple& m, double tau, double gap, const GmmOptions& options = {});

/// fit_gmm_moments on the empirical moments of bins. The bin pairs
/// (i, i + Delta) are separated by (Delta - 1) tau, so that is the gap
/// matched against w3. Needs Delta >= 1.
[[nodiscard]] FitResult fit_gmm(const BinSeries& bins, const GmmOptions& options = {});

}  // namespace hawkes
