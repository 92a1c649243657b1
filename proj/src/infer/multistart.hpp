#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hawkes/infer/fit.hpp"

namespace hawkes::detail {

/// A fit problem on a transformed, unconstrained domain.
struct FitProblem {
    std::vector<std::string> names;
    std::vector<double> start;  ///< natural scale
    std::function<std::vector<double>(const std::vector<double>&)> to_natural;
    std::function<std::vector<double>(const std::vector<double>&)> to_search;
    /// Value to maximise at natural-scale theta; -infinity allowed.
    std::function<double(const std::vector<double>&)> objective;
    /// Standard deviation of the restart perturbation, in search coordinates.
    double spread = 0.7;
};

/// Runs restart 0 from problem.start and restart k from a perturbation drawn
/// with Rng(seed).split(k). Restarts are merged by (objective, index).
/// Throws NumericalError listing each restart when none converged.
[[nodiscard]] FitResult run_multistart(const FitProblem& problem, int restarts, std::uint64_t seed,
                                       const NelderMeadOptions& options);

}  // namespace hawkes::detail
