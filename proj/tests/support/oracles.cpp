#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace oracle {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol) {
    if (b <= a) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 60);
}

double simpson_pieces(const std::function<double(double)>& f, double a, double b, std::vector<double> breaks,
                      double abs_tol, double rel_tol) {
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        const double lo = std::max(a, breaks[i - 1]);
        const double hi = std::min(b, breaks[i]);
        if (hi <= lo) continue;
        // evaluate strictly inside the piece so jumps at the ends do not leak in
        const double eps = 1e-15 * std::max(1.0, std::abs(hi));
        const auto inner = [&](double s) { return f(std::clamp(s, lo + eps, hi - eps)); };
        total += simpson(inner, lo, hi, abs_tol, rel_tol);
    }
    return total;
}

double exp_intensity(double lambda, double lambda0, double alpha, double beta, const std::vector<double>& times,
                     double t) {
    double v = lambda + (lambda0 - lambda) * std::exp(-beta * t);
    for (double ti : times) {
        if (ti < t) v += alpha * std::exp(-beta * (t - ti));
    }
    return v;
}

double power_intensity(double lambda, double K, double c, double p, const std::vector<double>& times, double t) {
    double v = lambda;
    for (double ti : times) {
        if (ti < t) v += K * std::pow(t - ti + c, -p);
    }
    return v;
}

double exp_loglik_quadrature(double lambda, double lambda0, double alpha, double beta,
                             const std::vector<double>& times, double T) {
    double log_sum = 0.0;
    for (double t : times) log_sum += std::log(exp_intensity(lambda, lambda0, alpha, beta, times, t));
    const auto f = [&](double s) { return exp_intensity(lambda, lambda0, alpha, beta, times, s); };
    return log_sum - simpson_pieces(f, 0.0, T, times);
}

double spectral_radius_2x2(double a, double b, double c, double d) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
    const auto l1 = (tr + disc) / 2.0;
    const auto l2 = (tr - disc) / 2.0;
    return std::max(std::abs(l1), std::abs(l2));
}

}  // namespace oracle
