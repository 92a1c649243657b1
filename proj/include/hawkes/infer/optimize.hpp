#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hawkes {

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    /// Stop once max f - min f over the simplex is below fatol and every
    /// vertex lies within xatol (max-norm) of the best one.
    double fatol = 1e-8;
    double xatol = 1e-5;
    int max_iterations = 2000;
    /// Offset of the initial vertices along each coordinate.
    double initial_step = 0.25;
    /// Value substituted for NaN or infinite objective values.
    double penalty = 1e12;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    double diameter = 0.0;  ///< max-norm distance of the worst vertex from the best at exit
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimisation of f from x0.
[[nodiscard]] NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                                           const NelderMeadOptions& options = {});

}  // namespace hawkes
