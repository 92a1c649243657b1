#pragma once

#include <vector>

#include "hawkes/core/events.hpp"
#include "hawkes/core/intensity.hpp"
#include "hawkes/core/kernel.hpp"
#include "hawkes/core/model.hpp"

namespace hawkes {

/// Mutually exciting Hawkes process on d dimensions:
///   lambda*_k(t) = lambda_k + sum_j sum_{T^j_i < t} mu_{j,k}(t - T^j_i).
///
/// kernels is row-major with row j = source and column k = target. Dimension
/// indices are 0-based. All kernels must be non-negative. A single shared
/// baseline is the usual configuration; per-dimension baselines are opt-in.
struct MultivariateHawkesModel {
    int d = 1;
    std::vector<double> baselines;
    std::vector<Kernel> kernels;

    /// Every dimension gets the same baseline lambda.
    [[nodiscard]] static MultivariateHawkesModel with_shared_baseline(int d, double lambda,
                                                                      std::vector<Kernel> kernels);

    [[nodiscard]] const Kernel& kernel(int source, int target) const;
    void validate() const;
};

/// Phi with phi_{j,k} = integral of mu_{j,k}; row-major, row = source.
struct BranchingMatrix {
    int d = 0;
    std::vector<double> phi;

    [[nodiscard]] double operator()(int j, int k) const { return phi[static_cast<std::size_t>(j * d + k)]; }
    [[nodiscard]] BranchingMatrix transposed() const;
};

/// lambda*_k(t); events must carry dims.
[[nodiscard]] double intensity_k(const MultivariateHawkesModel& model, const EventSequence& events, int k, double t,
                                 Limit limit = Limit::left);

[[nodiscard]] BranchingMatrix branching_matrix(const MultivariateHawkesModel& model);

/// Largest eigenvalue modulus of a non-negative square matrix.
///
/// Shifted power iteration from a positive start vector, stopped when the
/// Collatz-Wielandt bracket on the Perron root is narrower than 1e-10
/// (relative); reducible or defective matrices whose bracket does not close
/// within 10^4 iterations fall back to a Hessenberg QR eigenvalue solve.
[[nodiscard]] double spectral_radius(const BranchingMatrix& phi);

/// (rho(Phi) < 1, rho(Phi)).
[[nodiscard]] StationarityReport is_stationary_mv(const MultivariateHawkesModel& model);

/// Integral of lambda*_k over [0, t].
[[nodiscard]] double compensator_k(const MultivariateHawkesModel& model, const EventSequence& events, int k,
                                   double t);

}  // namespace hawkes
