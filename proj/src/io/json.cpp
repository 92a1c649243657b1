#include "hawkes/io/json.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "hawkes/core/error.hpp"

namespace hawkes::io {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(fmt::format("model spec is missing \"{}\"", key));
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(fmt::format("\"{}\" must be a number", key));
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) { return j.contains(key) ? number(j, key) : fallback; }

Kernel parse_kernel(const json& j) {
    if (!j.is_object()) throw ConfigError("kernel must be an object");
    const std::string type = j.value("type", "");
    if (type == "exp") return ExpKernel{number(j, "alpha"), number(j, "beta")};
    if (type == "powerlaw") return PowerLawKernel{number(j, "K"), number(j, "c"), number(j, "p")};
    throw ConfigError(fmt::format("unknown kernel type '{}' (expected exp or powerlaw)", type));
}

json kernel_to_json(const Kernel& k) {
    if (const auto* e = std::get_if<ExpKernel>(&k)) return {{"type", "exp"}, {"alpha", e->alpha}, {"beta", e->beta}};
    const auto& p = std::get<PowerLawKernel>(k);
    return {{"type", "powerlaw"}, {"K", p.K}, {"c", p.c}, {"p", p.p}};
}

JumpDistribution parse_jump(const json& j, const char* key) {
    if (!j.contains(key)) return JumpDistribution::exponential_mean(1.0);
    const auto& v = j.at(key);
    if (v.is_number()) return JumpDistribution::constant(v.get<double>());
    const std::string type = v.value("type", "exponential");
    if (type == "exponential") return JumpDistribution::exponential_mean(number(v, "mean"));
    if (type == "constant") return JumpDistribution::constant(number(v, "value"));
    throw ConfigError(fmt::format("unknown jump distribution '{}' (expected exponential or constant)", type));
}

json jump_to_json(const JumpDistribution& d) {
    if (d.kind == JumpDistribution::Kind::constant) return {{"type", "constant"}, {"value", d.value}};
    return {{"type", "exponential"}, {"mean", d.value}};
}

RenewalDensity parse_density(const json& j) {
    const std::string family = j.value("family", "");
    if (family == "exponential") return RenewalDensity::exponential(number(j, "rate"));
    if (family == "gamma") return RenewalDensity::gamma(number(j, "shape"), number(j, "rate"));
    if (family == "weibull") return RenewalDensity::weibull(number(j, "shape"), number(j, "scale"));
    throw ConfigError(fmt::format("unknown density family '{}' (expected exponential, gamma or weibull)", family));
}

json density_to_json(const RenewalDensity& d) {
    switch (d.family) {
        case RenewalDensity::Family::exponential: return {{"family", "exponential"}, {"rate", d.rate}};
        case RenewalDensity::Family::gamma: return {{"family", "gamma"}, {"shape", d.shape}, {"rate", d.rate}};
        case RenewalDensity::Family::weibull: return {{"family", "weibull"}, {"shape", d.shape}, {"scale", d.scale}};
    }
    return {};
}

RateTransform parse_phi(const std::string& name) {
    if (name == "linear") return {RateTransform::Kind::linear};
    if (name == "relu") return {RateTransform::Kind::relu};
    if (name == "softplus") return {RateTransform::Kind::softplus};
    throw ConfigError(fmt::format("unknown rate transform '{}' (expected linear, relu or softplus)", name));
}

std::string phi_name(RateTransform phi) {
    switch (phi.kind) {
        case RateTransform::Kind::linear: return "linear";
        case RateTransform::Kind::relu: return "relu";
        case RateTransform::Kind::softplus: return "softplus";
    }
    return "relu";
}

ModelSpec parse_object(const json& j) {
    if (!j.is_object()) throw ConfigError("model spec must be a JSON object");
    if (j.contains("schema") && !(j.at("schema").is_number_integer() && j.at("schema").get<int>() == 1)) {
        throw ConfigError("unsupported model spec schema (expected \"schema\": 1)");
    }
    const std::string kind = j.value("model", "hawkes");
    if (kind == "hawkes") {
        HawkesModel m;
        m.lambda = number(j, "lambda");
        if (j.contains("lambda0")) m.lambda0 = number(j, "lambda0");
        if (!j.contains("kernel")) throw ConfigError("model spec is missing \"kernel\"");
        m.kernel = parse_kernel(j.at("kernel"));
        m.validate();
        return m;
    }
    if (kind == "nonlinear") {
        NonlinearSpec s;
        s.lambda = number(j, "lambda");
        const Kernel k = parse_kernel(j.at("kernel"));
        if (!std::holds_alternative<ExpKernel>(k)) throw ConfigError("nonlinear models need an exp kernel");
        s.kernel = std::get<ExpKernel>(k);
        s.phi = parse_phi(j.value("phi", "relu"));
        s.validate();
        return s;
    }
    if (kind == "multivariate") {
        MultivariateHawkesModel m;
        m.d = j.value("d", 0);
        if (m.d < 1) throw ConfigError("multivariate spec needs \"d\" >= 1");
        if (j.contains("baselines")) {
            m.baselines = j.at("baselines").get<std::vector<double>>();
        } else {
            m.baselines.assign(static_cast<std::size_t>(m.d), number(j, "lambda"));
        }
        if (!j.contains("kernels") || !j.at("kernels").is_array()) throw ConfigError("multivariate spec needs \"kernels\"");
        for (const auto& k : j.at("kernels")) m.kernels.push_back(parse_kernel(k));
        m.validate();
        return m;
    }
    if (kind == "etas") {
        EtasModel m;
        m.lambda = number(j, "lambda");
        m.A = number(j, "A");
        m.alpha = number(j, "alpha");
        if (j.contains("beta") && (j.at("beta").is_null() || j.at("beta") == "inf")) {
            m.beta = std::numeric_limits<double>::infinity();
        } else {
            m.beta = number(j, "beta");
        }
        m.m0 = number(j, "m0");
        m.c = number(j, "c");
        m.p = number(j, "p");
        m.validate();
        return m;
    }
    if (kind == "discrete") {
        DiscreteModel m;
        m.lambda = number(j, "lambda");
        m.eta = number(j, "eta");
        if (j.contains("g")) m.g = j.at("g").get<std::vector<double>>();
        const std::string emission = j.value("emission", "poisson");
        if (emission == "poisson") {
            m.emission = DiscreteModel::Emission::poisson;
        } else if (emission == "negbin") {
            m.emission = DiscreteModel::Emission::negative_binomial;
            m.psi = number(j, "psi");
        } else {
            throw ConfigError(fmt::format("unknown emission '{}' (expected poisson or negbin)", emission));
        }
        m.validate();
        return m;
    }
    if (kind == "dynamic_contagion") {
        DynamicContagionModel m;
        m.a = number(j, "a");
        m.lambda0 = number(j, "lambda0");
        m.delta = number(j, "delta");
        m.rho = number(j, "rho");
        m.self_jump = parse_jump(j, "self_jump");
        m.external_jump = parse_jump(j, "external_jump");
        m.validate();
        return m;
    }
    if (kind == "renewal") {
        RenewalHawkesModel m;
        if (!j.contains("density")) throw ConfigError("renewal spec needs \"density\"");
        m.density = parse_density(j.at("density"));
        m.kernel = parse_kernel(j.at("kernel"));
        m.validate();
        return m;
    }
    throw ConfigError(fmt::format("unknown model '{}'", kind));
}

}  // namespace

ModelSpec parse_model(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("model spec is not valid JSON: {}", e.what()));
    }
    try {
        return parse_object(j);
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("malformed model spec: {}", e.what()));
    }
}

ModelSpec read_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open model spec {}", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string model_kind(const ModelSpec& spec) {
    static constexpr const char* names[] = {"hawkes", "nonlinear", "multivariate", "etas",
                                            "discrete", "dynamic_contagion", "renewal"};
    return names[spec.index()];
}

std::string model_json(const ModelSpec& spec) {
    json j{{"schema", 1}, {"model", model_kind(spec)}};
    std::visit(
        [&j](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, HawkesModel>) {
                j["lambda"] = m.lambda;
                if (m.lambda0) j["lambda0"] = *m.lambda0;
                j["kernel"] = kernel_to_json(m.kernel);
            } else if constexpr (std::is_same_v<M, NonlinearSpec>) {
                j["lambda"] = m.lambda;
                j["kernel"] = kernel_to_json(m.kernel);
                j["phi"] = phi_name(m.phi);
            } else if constexpr (std::is_same_v<M, MultivariateHawkesModel>) {
                j["d"] = m.d;
                j["baselines"] = m.baselines;
                json ks = json::array();
                for (const auto& k : m.kernels) ks.push_back(kernel_to_json(k));
                j["kernels"] = ks;
            } else if constexpr (std::is_same_v<M, EtasModel>) {
                j["lambda"] = m.lambda;
                j["A"] = m.A;
                j["alpha"] = m.alpha;
                j["beta"] = std::isinf(m.beta) ? json("inf") : json(m.beta);
                j["m0"] = m.m0;
                j["c"] = m.c;
                j["p"] = m.p;
            } else if constexpr (std::is_same_v<M, DiscreteModel>) {
                j["lambda"] = m.lambda;
                j["eta"] = m.eta;
                j["g"] = m.g;
                j["emission"] = m.emission == DiscreteModel::Emission::poisson ? "poisson" : "negbin";
                if (m.emission == DiscreteModel::Emission::negative_binomial) j["psi"] = m.psi;
            } else if constexpr (std::is_same_v<M, DynamicContagionModel>) {
                j["a"] = m.a;
                j["lambda0"] = m.lambda0;
                j["delta"] = m.delta;
                j["rho"] = m.rho;
                j["self_jump"] = jump_to_json(m.self_jump);
                j["external_jump"] = jump_to_json(m.external_jump);
            } else {
                j["density"] = density_to_json(m.density);
                j["kernel"] = kernel_to_json(m.kernel);
            }
        },
        spec);
    return j.dump(2) + "\n";
}

std::string fit_json(const FitResult& fit, std::string_view family) {
    const auto named = [&fit](const std::vector<double>& values) {
        json o = json::object();
        for (std::size_t i = 0; i < values.size() && i < fit.names.size(); ++i) o[fit.names[i]] = values[i];
        return o;
    };
    json restarts = json::array();
    for (std::size_t k = 0; k < fit.restart_values.size(); ++k) {
        const auto& r = fit.restart_values[k];
        restarts.push_back({{"index", k},
                            {"start", named(r.start)},
                            {"objective", r.loglik},
                            {"iterations", r.iterations},
                            {"converged", r.converged}});
    }
    json j{{"family", family},
           {"theta", named(fit.theta)},
           {"loglik", fit.loglik},
           {"converged", fit.converged},
           {"best_restart", fit.best_restart},
           {"iterations", fit.iterations},
           {"restarts", restarts},
           {"warnings", fit.warnings}};
    if (fit.stationarity) {
        j["stationary"] = fit.stationarity->stationary;
        j["branching_ratio"] = fit.stationarity->branching_ratio;
    }
    return j.dump(2) + "\n";
}

std::string moments_json(const MomentTriple* theoretical, const MomentTriple* empirical, double tau, double delta) {
    json j{{"tau", tau}, {"delta", delta}};
    if (theoretical) j["theoretical"] = {{"w1", theoretical->m1}, {"w2", theoretical->m2}, {"w3", theoretical->m3}};
    if (empirical) j["empirical"] = {{"m1", empirical->m1}, {"m2", empirical->m2}, {"m3", empirical->m3}};
    return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError(fmt::format("cannot write {}", path.string()));
    out << text;
}

}  // namespace hawkes::io
