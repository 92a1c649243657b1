#pragma once

#include <functional>
#include <vector>

// Independent reference computations for the tests. Nothing here calls the library.
namespace oracle {

/// Adaptive Simpson quadrature of a smooth integrand on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-13,
               double rel_tol = 1e-11);

/// Quadrature of a function that is smooth between the given breakpoints.
double simpson_pieces(const std::function<double(double)>& f, double a, double b, std::vector<double> breaks,
                      double abs_tol = 1e-13, double rel_tol = 1e-11);

/// lambda + (lambda0 - lambda) e^{-beta t} + sum_{t_i < t} alpha e^{-beta (t - t_i)}, term by term.
double exp_intensity(double lambda, double lambda0, double alpha, double beta, const std::vector<double>& times,
                     double t);

/// lambda + sum_{t_i < t} K (t - t_i + c)^{-p}.
double power_intensity(double lambda, double K, double c, double p, const std::vector<double>& times, double t);

/// sum log lambda*(t_i) - integral of lambda*, with the integral by quadrature.
double exp_loglik_quadrature(double lambda, double lambda0, double alpha, double beta,
                             const std::vector<double>& times, double T);

/// Largest |eigenvalue| of a 2x2 matrix from its characteristic polynomial.
double spectral_radius_2x2(double a, double b, double c, double d);

}  // namespace oracle
