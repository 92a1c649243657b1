#include "hawkes/infer/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hawkes/core/error.hpp"
#include "hawkes/infer/likelihood.hpp"
#include "hawkes/sim/rng.hpp"
#include "multistart.hpp"

namespace hawkes {

namespace detail {

FitResult run_multistart(const FitProblem& problem, int restarts, std::uint64_t seed,
                         const NelderMeadOptions& options) {
    if (restarts < 1) throw ConfigError("restarts must be >= 1");
    const Objective minimise = [&](std::span<const double> x) {
        double v = 0.0;
        try {
            v = problem.objective(problem.to_natural(std::vector<double>(x.begin(), x.end())));
        } catch (const ConfigError&) {
            return options.penalty;  // parameters under- or overflowed out of range
        } catch (const NumericalError&) {
            return options.penalty;
        }
        return std::isfinite(v) ? -v : options.penalty;
    };

    const std::vector<double> base = problem.to_search(problem.start);
    const Rng root(seed);
    FitResult out;
    out.names = problem.names;
    out.restarts = restarts;
    std::vector<NelderMeadResult> runs;
    for (int k = 0; k < restarts; ++k) {
        std::vector<double> x0 = base;
        if (k > 0) {
            Rng rng = root.split(static_cast<std::uint64_t>(k));
            for (double& v : x0) v += problem.spread * rng.normal();
        }
        NelderMeadResult r = nelder_mead(minimise, x0, options);
        out.restart_values.push_back({problem.to_natural(x0), -r.fx, r.iterations, r.converged});
        runs.push_back(std::move(r));
    }

    int best = -1;
    for (int k = 0; k < restarts; ++k) {
        if (!runs[k].converged) continue;
        if (best < 0 || runs[k].fx < runs[best].fx) best = k;
    }
    if (best < 0) {
        std::string detail;
        for (int k = 0; k < restarts; ++k) {
            detail += fmt::format("; restart {}: objective {} after {} iterations", k, -runs[k].fx, runs[k].iterations);
        }
        throw NumericalError("no optimizer restart converged" + detail);
    }
    out.best_restart = best;
    out.theta = problem.to_natural(runs[best].x);
    out.loglik = problem.objective(out.theta);
    out.iterations = runs[best].iterations;
    out.converged = true;
    return out;
}

}  // namespace detail

namespace {

std::vector<double> logs(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return std::log(x); });
    return out;
}

std::vector<double> exps(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return std::exp(x); });
    return out;
}

// Typical within-burst gap: the median interarrival time.
double median_gap(const EventSequence& events, double T) {
    const auto t = events.times();
    if (t.size() < 3) return T / static_cast<double>(t.size() + 1);
    std::vector<double> gaps(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) gaps[i - 1] = t[i] - t[i - 1];
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2), gaps.end());
    const double g = gaps[gaps.size() / 2];
    return g > 0.0 ? g : T / static_cast<double>(t.size());
}

// Positive parameters searched on the log scale; the entry at power_index
// (if any) is searched as log(p - 1).
detail::FitProblem log_problem(std::vector<std::string> names, std::vector<double> start, int power_index,
                               std::function<double(const std::vector<double>&)> objective) {
    detail::FitProblem p;
    p.names = std::move(names);
    p.start = std::move(start);
    p.to_natural = [power_index](const std::vector<double>& x) {
        auto v = exps(x);
        if (power_index >= 0) v[power_index] += 1.0;
        return v;
    };
    p.to_search = [power_index](const std::vector<double>& theta) {
        auto v = theta;
        if (power_index >= 0) v[power_index] -= 1.0;
        return logs(v);
    };
    p.objective = std::move(objective);
    return p;
}

double or_minus_infinity(const LikelihoodValue& v) {
    return v.finite ? v.value : -std::numeric_limits<double>::infinity();
}

}  // namespace

Family parse_family(std::string_view name) {
    if (name == "poisson") return Family::poisson;
    if (name == "exp") return Family::exp;
    if (name == "powerlaw") return Family::powerlaw;
    if (name == "etas") return Family::etas;
    if (name == "mvexp") return Family::mvexp;
    throw ConfigError(fmt::format("unknown model family '{}' (expected poisson, exp, powerlaw, etas or mvexp)", name));
}

std::string_view family_name(Family family) noexcept {
    switch (family) {
        case Family::poisson: return "poisson";
        case Family::exp: return "exp";
        case Family::powerlaw: return "powerlaw";
        case Family::etas: return "etas";
        case Family::mvexp: return "mvexp";
    }
    return "unknown";
}

double FitResult::get(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return theta[i];
    }
    throw std::out_of_range(fmt::format("fit has no parameter '{}'", name));
}

FitResult fit_mle(const EventSequence& events, double T, Family family, const FitOptions& options) {
    if (events.empty()) throw DataError("maximum likelihood needs at least one event");
    const double n = static_cast<double>(events.size());
    const double rate = n / T;
    const double gap = median_gap(events, T);

    FitResult result;
    switch (family) {
        case Family::poisson: {
            auto problem = log_problem({"lambda"}, {rate}, -1, [&](const std::vector<double>& th) {
                return or_minus_infinity(loglik_exp_fast({th[0], th[0], 0.0, 1.0}, events, T));
            });
            result = detail::run_multistart(problem, options.restarts, options.seed, options.optimizer);
            result.stationarity = StationarityReport{true, 0.0};
            break;
        }
        case Family::exp: {
            const double beta0 = 1.0 / gap;
            std::vector<std::string> names{"lambda", "alpha", "beta"};
            std::vector<double> start{0.5 * rate, 0.5 * beta0, beta0};
            if (options.fit_lambda0) {
                names.emplace_back("lambda0");
                start.push_back(0.5 * rate);
            }
            const bool with0 = options.fit_lambda0;
            auto problem = log_problem(names, start, -1, [&, with0](const std::vector<double>& th) {
                return or_minus_infinity(loglik_exp_fast({with0 ? th[3] : th[0], th[0], th[1], th[2]}, events, T));
            });
            result = detail::run_multistart(problem, options.restarts, options.seed, options.optimizer);
            result.stationarity = is_stationary(to_hawkes_model(result, family));
            break;
        }
        case Family::powerlaw: {
            const double c0 = gap;
            const double p0 = 2.0;
            const double K0 = 0.5 * (p0 - 1.0) * std::pow(c0, p0 - 1.0);
            auto problem = log_problem({"lambda", "K", "c", "p"}, {0.5 * rate, K0, c0, p0}, 3,
                                       [&](const std::vector<double>& th) {
                                           const HawkesModel m{th[0], std::nullopt, PowerLawKernel{th[1], th[2], th[3]}};
                                           return or_minus_infinity(loglik_general(m, events, T));
                                       });
            result = detail::run_multistart(problem, options.restarts, options.seed, options.optimizer);
            result.stationarity = is_stationary(to_hawkes_model(result, family));
            break;
        }
        case Family::etas: {
            if (!(options.m0 > 0.0)) throw ConfigError("ETAS fit needs the magnitude threshold m0 > 0");
            events.require_marks_at_least(options.m0);
            double mean_excess = 0.0;
            for (double m : events.marks()) mean_excess += m - options.m0;
            mean_excess /= n;
            const double beta_hat = mean_excess > 0.0 ? 1.0 / mean_excess : std::numeric_limits<double>::infinity();
            const double m0 = options.m0;
            const auto model_of = [m0, beta_hat](const std::vector<double>& th) {
                return EtasModel{th[0], th[1], th[2], beta_hat, m0, th[3], th[4]};
            };
            const double alpha0 = std::isfinite(beta_hat) ? 0.5 * beta_hat : 1.0;
            auto problem = log_problem({"lambda", "A", "alpha", "c", "p"}, {0.5 * rate, 0.3, alpha0, gap, 1.5}, 4,
                                       [&](const std::vector<double>& th) {
                                           return or_minus_infinity(loglik_etas(model_of(th), events, T));
                                       });
            result = detail::run_multistart(problem, options.restarts, options.seed, options.optimizer);
            result.names.emplace_back("beta");
            result.theta.push_back(beta_hat);
            const EtasModel fitted = to_etas_model(result, m0);
            result.loglik = or_minus_infinity(loglik_etas(fitted, events, T));
            result.stationarity = StationarityReport{fitted.subcritical(), fitted.mean_productivity()};
            if (!std::isfinite(beta_hat)) result.warnings.emplace_back("all marks equal m0; beta set to infinity");
            break;
        }
        case Family::mvexp: {
            int d = options.d;
            if (!events.has_dims()) throw DataError("multivariate fit needs a dim column");
            if (d <= 0) d = 1 + *std::max_element(events.dims().begin(), events.dims().end());
            events.require_dims_below(d);
            const auto du = static_cast<std::size_t>(d);
            std::vector<double> counts(du, 0.0);
            for (int k : events.dims()) counts[static_cast<std::size_t>(k)] += 1.0;
            std::vector<std::string> names;
            std::vector<double> start;
            const double beta0 = 1.0 / gap;
            for (std::size_t k = 0; k < du; ++k) {
                names.push_back(fmt::format("lambda_{}", k + 1));
                start.push_back(std::max(0.5 * counts[k] / T, 0.1 / T));
            }
            for (std::size_t j = 0; j < du; ++j) {
                for (std::size_t k = 0; k < du; ++k) {
                    names.push_back(fmt::format("alpha_{}_{}", j + 1, k + 1));
                    start.push_back(0.5 * beta0 / static_cast<double>(d));
                }
            }
            for (std::size_t j = 0; j < du; ++j) {
                for (std::size_t k = 0; k < du; ++k) {
                    names.push_back(fmt::format("beta_{}_{}", j + 1, k + 1));
                    start.push_back(beta0);
                }
            }
            auto problem = log_problem(names, start, -1, [&, d](const std::vector<double>& th) {
                FitResult tmp;
                tmp.names = names;
                tmp.theta = th;
                return or_minus_infinity(loglik_multivariate(to_multivariate_model(tmp, d), events, T));
            });
            result = detail::run_multistart(problem, options.restarts, options.seed, options.optimizer);
            result.stationarity = is_stationary_mv(to_multivariate_model(result, d));
            break;
        }
    }
    if (result.stationarity && !result.stationarity->stationary) {
        result.warnings.push_back(
            fmt::format("estimate is not stationary (branching ratio {})", result.stationarity->branching_ratio));
    }
    return result;
}

HawkesModel to_hawkes_model(const FitResult& fit, Family family) {
    switch (family) {
        case Family::poisson:
            return HawkesModel{fit.get("lambda"), std::nullopt, ExpKernel{0.0, 1.0}};
        case Family::exp: {
            HawkesModel m{fit.get("lambda"), std::nullopt, ExpKernel{fit.get("alpha"), fit.get("beta")}};
            if (std::find(fit.names.begin(), fit.names.end(), "lambda0") != fit.names.end()) {
                m.lambda0 = fit.get("lambda0");
            }
            return m;
        }
        case Family::powerlaw:
            return HawkesModel{fit.get("lambda"), std::nullopt, PowerLawKernel{fit.get("K"), fit.get("c"), fit.get("p")}};
        default:
            throw ConfigError(fmt::format("family {} is not a univariate Hawkes model", family_name(family)));
    }
}

EtasModel to_etas_model(const FitResult& fit, double m0) {
    return EtasModel{fit.get("lambda"), fit.get("A"), fit.get("alpha"), fit.get("beta"), m0, fit.get("c"), fit.get("p")};
}

MultivariateHawkesModel to_multivariate_model(const FitResult& fit, int d) {
    const auto du = static_cast<std::size_t>(d);
    MultivariateHawkesModel m;
    m.d = d;
    m.baselines.assign(fit.theta.begin(), fit.theta.begin() + d);
    const auto alpha = fit.theta.begin() + d;
    const auto beta = alpha + static_cast<std::ptrdiff_t>(du * du);
    for (std::size_t i = 0; i < du * du; ++i) m.kernels.emplace_back(ExpKernel{alpha[i], beta[i]});
    return m;
}

}  // namespace hawkes
