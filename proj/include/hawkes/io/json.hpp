#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "hawkes/core/model.hpp"
#include "hawkes/gmm/moments.hpp"
#include "hawkes/infer/fit.hpp"
#include "hawkes/multivariate/model.hpp"
#include "hawkes/sim/models.hpp"

namespace hawkes::io {

using ModelSpec = std::variant<HawkesModel, NonlinearSpec, MultivariateHawkesModel, EtasModel, DiscreteModel,
                               DynamicContagionModel, RenewalHawkesModel>;

/// Model spec JSON. An optional "schema" must be 1; "model" selects one of
/// hawkes (default), nonlinear, multivariate, etas, discrete,
/// dynamic_contagion, renewal. Any problem is a ConfigError.
[[nodiscard]] ModelSpec parse_model(std::string_view text);
[[nodiscard]] ModelSpec read_model(const std::filesystem::path& path);

[[nodiscard]] std::string model_json(const ModelSpec& spec);
[[nodiscard]] std::string model_kind(const ModelSpec& spec);

/// {"theta": {...}, "loglik": ..., "converged": ..., "restarts": [...], ...}
[[nodiscard]] std::string fit_json(const FitResult& fit, std::string_view family);
[[nodiscard]] std::string moments_json(const MomentTriple* theoretical, const MomentTriple* empirical, double tau,
                                       double delta);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hawkes::io
