#include "hawkes/cli/app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "hawkes/core/error.hpp"
#include "hawkes/core/intensity.hpp"
#include "hawkes/gmm/moments.hpp"
#include "hawkes/infer/diagnostics.hpp"
#include "hawkes/infer/fit.hpp"
#include "hawkes/io/csv.hpp"
#include "hawkes/io/json.hpp"
#include "hawkes/renewal/renewal.hpp"
#include "hawkes/sim/simulate.hpp"
#include "hawkes/simd/kernels.hpp"

namespace hawkes::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t default_seed = 20240601ULL;

struct Flags {
    std::string model;
    std::string data;
    std::string output = ".";
    std::uint64_t seed = default_seed;
    std::optional<double> T;
    std::string method = "thinning";
    std::optional<double> emit_intensity;
    std::string family = "exp";
    int restarts = 10;
    bool fit_lambda0 = false;
    double m0 = 0.0;
    int d = 0;
    double tau = 1.0;
    std::optional<double> delta;
    std::optional<std::size_t> discard;
    double step = 0.0;
};

fs::path output_dir(const Flags& f) {
    fs::path dir(f.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));
    return dir;
}

double require_T(const Flags& f, const char* command) {
    if (!f.T) throw ConfigError(fmt::format("{} needs --T", command));
    return *f.T;
}

template <class M>
const M& expect_model(const io::ModelSpec& spec, const char* command) {
    if (const auto* m = std::get_if<M>(&spec)) return *m;
    throw ConfigError(fmt::format("{} does not support '{}' models", command, io::model_kind(spec)));
}

// Left-limit intensity on the grid 0, step, 2 step, ..., T.
void write_intensity_path(const fs::path& path, const io::ModelSpec& spec, const EventSequence& events, double T,
                          double step) {
    if (!(step > 0.0)) throw ConfigError("--emit-intensity needs a grid step > 0");
    std::ofstream out(path);
    if (!out) throw ConfigError(fmt::format("cannot write {}", path.string()));
    out << "t,intensity\n";
    const auto n_steps = static_cast<std::size_t>(std::floor(T / step + 1e-9));
    const auto times = events.times();

    if (const auto* m = std::get_if<HawkesModel>(&spec); m && std::holds_alternative<ExpKernel>(m->kernel)) {
        const auto& k = std::get<ExpKernel>(m->kernel);
        double excess = 0.0;
        double at = 0.0;
        std::size_t next = 0;
        for (std::size_t g = 0; g <= n_steps; ++g) {
            const double t = static_cast<double>(g) * step;
            while (next < times.size() && times[next] < t) {
                excess = excess * std::exp(-k.beta * (times[next] - at)) + k.alpha;
                at = times[next++];
            }
            fmt::print(out, "{},{}\n", t, m->baseline(t) + excess * std::exp(-k.beta * (t - at)));
        }
        return;
    }
    if (const auto* m = std::get_if<HawkesModel>(&spec)) {
        for (std::size_t g = 0; g <= n_steps; ++g) {
            const double t = static_cast<double>(g) * step;
            fmt::print(out, "{},{}\n", t, conditional_intensity(*m, events, t));
        }
        return;
    }
    if (const auto* s = std::get_if<NonlinearSpec>(&spec)) {
        double x = 0.0;
        double at = 0.0;
        std::size_t next = 0;
        for (std::size_t g = 0; g <= n_steps; ++g) {
            const double t = static_cast<double>(g) * step;
            while (next < times.size() && times[next] < t) {
                x = x * std::exp(-s->kernel.beta * (times[next] - at)) + s->kernel.alpha;
                at = times[next++];
            }
            fmt::print(out, "{},{}\n", t, s->phi(s->lambda, x * std::exp(-s->kernel.beta * (t - at))));
        }
        return;
    }
    throw ConfigError("--emit-intensity supports hawkes and nonlinear models");
}

int cmd_simulate(const Flags& f, std::ostream& out) {
    const auto spec = io::read_model(f.model);
    const double T = require_T(f, "simulate");
    const auto dir = output_dir(f);
    Rng rng(f.seed);

    if (const auto* m = std::get_if<DiscreteModel>(&spec)) {
        if (!(T >= 1.0) || T != std::floor(T)) throw ConfigError("discrete simulation needs an integer --T >= 1 (steps)");
        const auto counts = simulate_discrete(*m, static_cast<std::size_t>(T), rng);
        io::write_counts(dir / "counts.csv", counts);
        fmt::print(out, "simulated {} steps -> {}\n", counts.size(), (dir / "counts.csv").string());
        return ok;
    }

    EventSequence events;
    if (const auto* m = std::get_if<HawkesModel>(&spec)) {
        if (f.method == "thinning") {
            events = simulate_thinning(*m, T, rng);
        } else if (f.method == "exact") {
            events = simulate_exact_exp(*m, T, rng);
        } else if (f.method == "cluster") {
            if (m->initial_intensity() != m->lambda) throw ConfigError("cluster simulation needs lambda0 = lambda");
            events = simulate_cluster(m->lambda, m->kernel, T, rng);
        } else {
            throw ConfigError(fmt::format("unknown --method '{}' (expected thinning, exact or cluster)", f.method));
        }
    } else if (const auto* s = std::get_if<NonlinearSpec>(&spec)) {
        events = simulate_nonlinear(*s, T, rng);
    } else if (const auto* mv = std::get_if<MultivariateHawkesModel>(&spec)) {
        events = simulate_multivariate(*mv, T, rng);
    } else if (const auto* e = std::get_if<EtasModel>(&spec)) {
        events = simulate_etas(*e, T, rng);
    } else if (const auto* c = std::get_if<DynamicContagionModel>(&spec)) {
        auto path = simulate_dynamic_contagion(*c, T, rng);
        io::write_shocks(dir / "shocks.csv", path.shock_times, path.shock_sizes);
        events = std::move(path.events);
    } else {
        events = simulate_renewal_hawkes(std::get<RenewalHawkesModel>(spec), T, rng);
    }
    io::write_events(dir / "events.csv", events);
    if (f.emit_intensity) write_intensity_path(dir / "intensity.csv", spec, events, T, *f.emit_intensity);
    fmt::print(out, "simulated {} events on [0, {}] -> {}\n", events.size(), T, (dir / "events.csv").string());
    return ok;
}

int cmd_fit_mle(const Flags& f, std::ostream& out) {
    const Family family = parse_family(f.family);
    const auto events = io::read_events(f.data, f.T);
    const double T = events.horizon();
    FitOptions options;
    options.restarts = f.restarts;
    options.seed = f.seed;
    options.fit_lambda0 = f.fit_lambda0;
    options.m0 = f.m0;
    options.d = f.d;
    const FitResult fit = fit_mle(events, T, family, options);
    const auto dir = output_dir(f);
    io::write_text(dir / "fit.json", io::fit_json(fit, family_name(family)));
    switch (family) {
        case Family::poisson:
        case Family::exp:
        case Family::powerlaw:
            io::write_text(dir / "model.json", io::model_json(to_hawkes_model(fit, family)));
            break;
        case Family::etas:
            io::write_text(dir / "model.json", io::model_json(to_etas_model(fit, f.m0)));
            break;
        case Family::mvexp: {
            const int d = static_cast<int>(std::sqrt(static_cast<double>(fit.theta.size()) / 2.0));
            io::write_text(dir / "model.json", io::model_json(to_multivariate_model(fit, d)));
            break;
        }
    }
    fmt::print(out, "loglik {} after {} restarts ->", fit.loglik, fit.restarts);
    for (std::size_t i = 0; i < fit.names.size(); ++i) fmt::print(out, " {}={}", fit.names[i], fit.theta[i]);
    out << '\n';
    for (const auto& w : fit.warnings) fmt::print(out, "warning: {}\n", w);
    return ok;
}

BinSeries load_bins(const Flags& f, const std::optional<double>& delta) {
    const double lag = delta.value_or(0.0);
    if (io::is_count_file(f.data)) {
        BinSeries bins;
        auto counts = io::read_counts(f.data);
        const std::size_t discard = f.discard.value_or(default_discard(counts.size()));
        if (discard >= counts.size()) throw ConfigError("--discard removes every bin");
        bins.counts.assign(counts.begin() + static_cast<std::ptrdiff_t>(discard), counts.end());
        bins.tau = f.tau;
        bins.delta = lag;
        bins.n_discarded = discard;
        return bins;
    }
    const auto events = io::read_events(f.data, f.T);
    const double ratio = events.horizon() / f.tau;
    const std::size_t n_bins = static_cast<std::size_t>(std::floor(ratio + 1e-9));
    return bin_counts(events, f.tau, f.discard.value_or(default_discard(n_bins)), lag);
}

int cmd_fit_gmm(const Flags& f, std::ostream& out) {
    BinSeries bins = load_bins(f, f.delta);
    if (!f.delta) bins.delta = default_gmm_delta(empirical_moments(bins.counts, 0), f.tau);
    GmmOptions options;
    options.restarts = f.restarts;
    options.seed = f.seed;
    const FitResult fit = fit_gmm(bins, options);
    const auto dir = output_dir(f);
    io::write_text(dir / "fit.json", io::fit_json(fit, "gmm"));
    fmt::print(out, "criterion {} (delta {}) -> lambda={} alpha={} beta={}\n", -fit.loglik, bins.delta, fit.theta[0],
               fit.theta[1], fit.theta[2]);
    for (const auto& w : fit.warnings) fmt::print(out, "warning: {}\n", w);
    return ok;
}

int cmd_moments(const Flags& f, std::ostream& out) {
    const auto spec = io::read_model(f.model);
    const auto& m = expect_model<HawkesModel>(spec, "moments");
    const auto* k = std::get_if<ExpKernel>(&m.kernel);
    if (!k) throw ConfigError("moments needs an exp kernel");
    const double delta = f.delta.value_or(0.0);
    std::optional<MomentTriple> empirical;
    double gap = delta;
    if (!f.data.empty()) {
        const BinSeries bins = load_bins(f, delta);
        empirical = empirical_moments(bins);
        // the lagged bins are (Delta - 1) whole bins apart
        const std::size_t lag = bins.lag();
        gap = lag > 0 ? static_cast<double>(lag - 1) * f.tau : 0.0;
    }
    const MomentTriple theoretical = theoretical_moments(m.lambda, k->alpha, k->beta, f.tau, gap);
    const auto dir = output_dir(f);
    io::write_text(dir / "moments.json",
                   io::moments_json(&theoretical, empirical ? &*empirical : nullptr, f.tau, delta));
    fmt::print(out, "w = ({}, {}, {})\n", theoretical.m1, theoretical.m2, theoretical.m3);
    if (empirical) fmt::print(out, "m = ({}, {}, {})\n", empirical->m1, empirical->m2, empirical->m3);
    return ok;
}

int cmd_gof(const Flags& f, std::ostream& out) {
    const auto spec = io::read_model(f.model);
    const auto& m = expect_model<HawkesModel>(spec, "gof");
    const auto events = io::read_events(f.data, f.T);
    const GofResult gof = gof_rescaling(m, events, events.horizon());
    const auto dir = output_dir(f);
    io::write_text(dir / "gof.json", fmt::format("{{\n  \"ks_statistic\": {},\n  \"p_value\": {},\n  \"n\": {}\n}}\n",
                                                 gof.ks_statistic, gof.p_value, gof.rescaled_interarrivals.size()));
    std::ofstream csv(dir / "rescaled.csv");
    csv << "index,rescaled\n";
    for (std::size_t i = 0; i < gof.rescaled_interarrivals.size(); ++i) {
        fmt::print(csv, "{},{}\n", i + 1, gof.rescaled_interarrivals[i]);
    }
    fmt::print(out, "KS statistic {} p-value {} over {} interarrivals\n", gof.ks_statistic, gof.p_value,
               gof.rescaled_interarrivals.size());
    return ok;
}

int cmd_decluster(const Flags& f, std::ostream& out) {
    const auto spec = io::read_model(f.model);
    const auto events = io::read_events(f.data, f.T);
    Rng rng(f.seed);
    DeclusterResult r;
    if (const auto* m = std::get_if<HawkesModel>(&spec)) {
        r = decluster(*m, events, rng);
    } else {
        r = decluster(expect_model<EtasModel>(spec, "decluster"), events, rng);
    }
    const auto dir = output_dir(f);
    std::ofstream csv(dir / "decluster.csv");
    if (!csv) throw ConfigError("cannot write decluster.csv");
    csv << "time,rho,label\n";
    std::size_t background = 0;
    for (std::size_t i = 0; i < r.rho.size(); ++i) {
        fmt::print(csv, "{},{},{}\n", events[i], r.rho[i], r.background[i] ? "background" : "triggered");
        background += r.background[i] ? 1 : 0;
    }
    fmt::print(out, "{} of {} events labelled background\n", background, r.rho.size());
    return ok;
}

int cmd_renewal_mean(const Flags& f, std::ostream& out) {
    const auto spec = io::read_model(f.model);
    const auto& m = expect_model<RenewalHawkesModel>(spec, "renewal-mean");
    const double T = require_T(f, "renewal-mean");
    MeanFunctionOptions options;
    options.step = f.step;
    const MeanFunctions mf = solve_mean_functions(m.density, m.kernel, T, options);
    const auto dir = output_dir(f);
    io::write_grid(dir / "grid.csv", mf.K, mf.M);
    fmt::print(out, "K({0}) = {1}, M({0}) = {2}; step {3}, {4} halvings, change {5}{6}\n", T, mf.K.values.back(),
               mf.M.values.back(), mf.K.step, mf.halvings, mf.change, mf.converged ? "" : " (not converged)");
    return ok;
}

int cmd_validate(const Flags& f, std::ostream& out) {
    const auto events = io::read_events(f.data, f.T);
    if (!f.model.empty()) {
        const auto spec = io::read_model(f.model);
        if (const auto* e = std::get_if<EtasModel>(&spec)) events.require_marks_at_least(e->m0);
        if (const auto* mv = std::get_if<MultivariateHawkesModel>(&spec); mv && !events.empty()) {
            events.require_dims_below(mv->d);
        }
    }
    fmt::print(out, "OK, {} events, horizon {}\n", events.size(), events.horizon());
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hawkes process toolkit"};
    app.require_subcommand(1);
    Flags f;

    const auto add_common = [&f](CLI::App* sub) {
        sub->add_option("--output,-o", f.output, "output directory")->capture_default_str();
        sub->add_option("--seed", f.seed, "random seed")->capture_default_str();
        sub->add_option("--T", f.T, "observation horizon (defaults to the last event time)");
    };

    auto* simulate = app.add_subcommand("simulate", "simulate a model");
    simulate->add_option("--model", f.model, "model spec JSON")->required();
    simulate->add_option("--method", f.method, "hawkes models: thinning, exact or cluster")->capture_default_str();
    simulate->add_option("--emit-intensity", f.emit_intensity, "write intensity.csv on a grid with this step");
    add_common(simulate);

    auto* fit = app.add_subcommand("fit-mle", "maximum likelihood fit");
    fit->add_option("--data", f.data, "event CSV")->required();
    fit->add_option("--family", f.family, "poisson, exp, powerlaw, etas or mvexp")->capture_default_str();
    fit->add_option("--restarts", f.restarts, "optimizer restarts")->capture_default_str();
    fit->add_flag("--fit-lambda0", f.fit_lambda0, "estimate lambda0 separately (exp family)");
    fit->add_option("--m0", f.m0, "magnitude threshold (etas family)");
    fit->add_option("--d", f.d, "dimensions (mvexp family)");
    add_common(fit);

    auto* gmm = app.add_subcommand("fit-gmm", "method-of-moments fit on binned counts");
    gmm->add_option("--data", f.data, "event CSV or pre-binned CSV with header `count`")->required();
    gmm->add_option("--tau", f.tau, "bin width")->capture_default_str();
    gmm->add_option("--delta", f.delta, "covariance lag");
    gmm->add_option("--discard", f.discard, "leading bins to drop (default 10%)");
    gmm->add_option("--restarts", f.restarts, "optimizer restarts")->capture_default_str();
    add_common(gmm);

    auto* moments = app.add_subcommand("moments", "theoretical and empirical count moments");
    moments->add_option("--model", f.model, "exp hawkes model spec")->required();
    moments->add_option("--data", f.data, "event CSV or pre-binned counts");
    moments->add_option("--tau", f.tau, "bin width")->capture_default_str();
    moments->add_option("--delta", f.delta, "covariance lag");
    moments->add_option("--discard", f.discard, "leading bins to drop (default 10%)");
    add_common(moments);

    auto* gof = app.add_subcommand("gof", "time-rescaling goodness of fit");
    gof->add_option("--model", f.model, "model spec JSON")->required();
    gof->add_option("--data", f.data, "event CSV")->required();
    add_common(gof);

    auto* dec = app.add_subcommand("decluster", "background probabilities and sampled labels");
    dec->add_option("--model", f.model, "hawkes or etas model spec")->required();
    dec->add_option("--data", f.data, "event CSV")->required();
    add_common(dec);

    auto* renewal = app.add_subcommand("renewal-mean", "solve for K(t) and M(t)");
    renewal->add_option("--model", f.model, "renewal model spec")->required();
    renewal->add_option("--step", f.step, "grid step (0 picks a default)");
    add_common(renewal);

    auto* validate = app.add_subcommand("validate", "check an event file");
    validate->add_option("--data", f.data, "event CSV")->required();
    validate->add_option("--model", f.model, "optional spec supplying m0 or d");
    validate->add_option("--T", f.T, "observation horizon");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "error: config: {}\n", e.what());
        return usage_error;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(f, out);
        if (fit->parsed()) return cmd_fit_mle(f, out);
        if (gmm->parsed()) return cmd_fit_gmm(f, out);
        if (moments->parsed()) return cmd_moments(f, out);
        if (gof->parsed()) return cmd_gof(f, out);
        if (dec->parsed()) return cmd_decluster(f, out);
        if (renewal->parsed()) return cmd_renewal_mean(f, out);
        return cmd_validate(f, out);
    } catch (const ConfigError& e) {
        fmt::print(err, "error: config: {}\n", e.what());
        return usage_error;
    } catch (const DataError& e) {
        fmt::print(err, "error: data: {}\n", e.what());
        return data_error;
    } catch (const NumericalError& e) {
        fmt::print(err, "error: numerical: {}\n", e.what());
        return numerical_error;
    } catch (const std::exception& e) {
        fmt::print(err, "error: internal: {}\n", e.what());
        return 1;
    }
}

}  // namespace hawkes::cli
