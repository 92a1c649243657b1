#include "hawkes/infer/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hawkes/core/error.hpp"

namespace hawkes {

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt) {
    const std::size_t n = x0.size();
    if (n == 0) throw ConfigError("nelder_mead needs at least one parameter");

    NelderMeadResult result;
    const auto eval = [&](const std::vector<double>& x) {
        ++result.evaluations;
        const double v = f(x);
        return std::isfinite(v) ? v : opt.penalty;
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opt.initial_step;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    const auto point = [&](double coef, const std::vector<double>& worst, std::vector<double>& out) {
        for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (worst[j] - centroid[j]);
    };

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> s(n + 1);
            std::vector<double> v(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                s[i] = std::move(simplex[order[i]]);
                v[i] = fv[order[i]];
            }
            simplex = std::move(s);
            fv = std::move(v);
        }

        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[0][j]));
        }
        result.diameter = diameter;
        if (fv[n] - fv[0] <= opt.fatol && diameter <= opt.xatol) {
            result.converged = true;
            break;
        }
        if (result.iterations >= opt.max_iterations) break;
        ++result.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const auto& worst = simplex[n];
        point(-opt.reflection, worst, xr);
        const double fr = eval(xr);
        if (fr < fv[0]) {
            point(-opt.reflection * opt.expansion, worst, xe);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
            continue;
        }
        if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
            continue;
        }
        // contraction, outside if the reflected point improved on the worst
        const bool outside = fr < fv[n];
        point(outside ? -opt.reflection * opt.contraction : opt.contraction, worst, xc);
        const double fc = eval(xc);
        if (fc < (outside ? fr : fv[n])) {
            simplex[n] = xc;
            fv[n] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[0][j] + opt.shrink * (simplex[i][j] - simplex[0][j]);
            fv[i] = eval(simplex[i]);
        }
    }
    result.x = simplex[0];
    result.fx = fv[0];
    return result;
}

}  // namespace hawkes
