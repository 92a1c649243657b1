#include "hawkes/multivariate/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "hawkes/core/error.hpp"
#include "hawkes/multivariate/detail.hpp"
#include "hawkes/simd/kernels.hpp"

namespace hawkes {

MultivariateHawkesModel MultivariateHawkesModel::with_shared_baseline(int d, double lambda,
                                                                      std::vector<Kernel> kernels) {
    MultivariateHawkesModel m;
    m.d = d;
    m.baselines.assign(static_cast<std::size_t>(std::max(d, 0)), lambda);
    m.kernels = std::move(kernels);
    return m;
}

const Kernel& MultivariateHawkesModel::kernel(int source, int target) const {
    return kernels[static_cast<std::size_t>(source * d + target)];
}

void MultivariateHawkesModel::validate() const {
    if (d < 1) throw ConfigError("dimension count d must be >= 1");
    if (baselines.size() != static_cast<std::size_t>(d)) throw ConfigError("need one baseline per dimension");
    for (double b : baselines) {
        if (!std::isfinite(b) || b < 0.0) throw ConfigError("baselines must be finite and >= 0");
    }
    if (kernels.size() != static_cast<std::size_t>(d * d)) throw ConfigError("need d*d kernels (row-major)");
    for (const auto& k : kernels) hawkes::validate(k);
}

BranchingMatrix BranchingMatrix::transposed() const {
    BranchingMatrix t{d, std::vector<double>(phi.size())};
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) t.phi[static_cast<std::size_t>(k * d + j)] = (*this)(j, k);
    }
    return t;
}

namespace detail {

std::vector<std::vector<double>> split_by_dim(const EventSequence& events, int d) {
    events.require_dims_below(d);
    std::vector<std::vector<double>> out(static_cast<std::size_t>(d));
    const auto times = events.times();
    const auto dims = events.dims();
    for (std::size_t i = 0; i < times.size(); ++i) out[static_cast<std::size_t>(dims[i])].push_back(times[i]);
    return out;
}

double kernel_sum(const Kernel& kernel, std::span<const double> history, double t) {
    if (history.empty()) return 0.0;
    if (const auto* e = std::get_if<ExpKernel>(&kernel)) {
        if (e->alpha == 0.0) return 0.0;
        return e->alpha * simd::sum_exp_decay(history, t, e->beta);
    }
    const auto& p = std::get<PowerLawKernel>(kernel);
    return p.K * std::pow(p.c, -p.p) * simd::sum_power_decay(history, {}, t, p.c, p.p);
}

double kernel_integral_sum(const Kernel& kernel, std::span<const double> history, double t) {
    if (history.empty()) return 0.0;
    const auto n = static_cast<double>(history.size());
    if (const auto* e = std::get_if<ExpKernel>(&kernel)) {
        if (e->alpha == 0.0) return 0.0;
        return e->alpha / e->beta * (n - simd::sum_exp_decay(history, t, e->beta));
    }
    const auto& p = std::get<PowerLawKernel>(kernel);
    return p.K * std::pow(p.c, 1.0 - p.p) / (p.p - 1.0) *
           (n - simd::sum_power_decay(history, {}, t, p.c, p.p - 1.0));
}

}  // namespace detail

namespace {

void require_dim(const MultivariateHawkesModel& model, int k) {
    if (k < 0 || k >= model.d) {
        throw std::out_of_range("dimension " + std::to_string(k) + " outside [0, " + std::to_string(model.d) + ")");
    }
}

std::span<const double> prefix_before(const std::vector<double>& times, double t, Limit limit) {
    const auto it = limit == Limit::left ? std::lower_bound(times.begin(), times.end(), t)
                                         : std::upper_bound(times.begin(), times.end(), t);
    return {times.data(), static_cast<std::size_t>(it - times.begin())};
}

}  // namespace

double intensity_k(const MultivariateHawkesModel& model, const EventSequence& events, int k, double t,
                   Limit limit) {
    require_dim(model, k);
    if (!(t >= 0.0 && t <= events.horizon())) throw std::out_of_range("time outside observation window");
    const auto by_dim = detail::split_by_dim(events, model.d);
    double value = model.baselines[static_cast<std::size_t>(k)];
    for (int j = 0; j < model.d; ++j) {
        value += detail::kernel_sum(model.kernel(j, k), prefix_before(by_dim[static_cast<std::size_t>(j)], t, limit), t);
    }
    return value;
}

double compensator_k(const MultivariateHawkesModel& model, const EventSequence& events, int k, double t) {
    require_dim(model, k);
    if (!(t >= 0.0 && t <= events.horizon())) throw std::out_of_range("time outside observation window");
    const auto by_dim = detail::split_by_dim(events, model.d);
    double value = model.baselines[static_cast<std::size_t>(k)] * t;
    for (int j = 0; j < model.d; ++j) {
        value += detail::kernel_integral_sum(model.kernel(j, k),
                                             prefix_before(by_dim[static_cast<std::size_t>(j)], t, Limit::left), t);
    }
    return value;
}

BranchingMatrix branching_matrix(const MultivariateHawkesModel& model) {
    model.validate();
    BranchingMatrix m{model.d, {}};
    m.phi.reserve(model.kernels.size());
    for (const auto& k : model.kernels) m.phi.push_back(branching_ratio(k));
    return m;
}

double spectral_radius(const BranchingMatrix& phi) {
    const int d = phi.d;
    if (d < 1 || phi.phi.size() != static_cast<std::size_t>(d * d)) {
        throw std::invalid_argument("branching matrix must be square and non-empty");
    }
    double norm_inf = 0.0;
    for (int j = 0; j < d; ++j) {
        double row = 0.0;
        for (int k = 0; k < d; ++k) {
            const double v = phi(j, k);
            if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("branching matrix entries must be >= 0");
            row += v;
        }
        norm_inf = std::max(norm_inf, row);
    }
    if (norm_inf == 0.0) return 0.0;

    // Power iteration on B = Phi + s I keeps the iterate strictly positive, and
    // the Perron root of B is then its unique dominant eigenvalue.
    const double shift = norm_inf;
    std::vector<double> x(static_cast<std::size_t>(d), 1.0);
    std::vector<double> y(x.size());
    constexpr int kMaxIterations = 10000;
    for (int it = 0; it < kMaxIterations; ++it) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        double ymax = 0.0;
        for (int i = 0; i < d; ++i) {
            double acc = shift * x[static_cast<std::size_t>(i)];
            for (int j = 0; j < d; ++j) acc += phi(i, j) * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = acc;
            const double ratio = acc / x[static_cast<std::size_t>(i)];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            ymax = std::max(ymax, acc);
        }
        if (hi - lo <= 1e-11 * shift) return std::max(0.0, 0.5 * (hi + lo) - shift);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = y[i] / ymax;
    }

    // The bracket closes only sublinearly for defective or reducible
    // matrices; hand those to a dense eigenvalue solver.
    Eigen::MatrixXd a(d, d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) a(j, k) = phi(j, k);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("spectral radius: power iteration did not converge after 10000 iterations and the "
                             "QR fallback failed");
    }
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

StationarityReport is_stationary_mv(const MultivariateHawkesModel& model) {
    const double rho = spectral_radius(branching_matrix(model));
    return {rho < 1.0, rho};
}

}  // namespace hawkes
