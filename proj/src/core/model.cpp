#include "hawkes/core/model.hpp"

#include <cmath>

#include "hawkes/core/error.hpp"

namespace hawkes {

double HawkesModel::baseline(double t) const {
    if (const auto* e = std::get_if<ExpKernel>(&kernel)) {
        return lambda + (initial_intensity() - lambda) * std::exp(-e->beta * t);
    }
    return lambda;
}

void HawkesModel::validate() const {
    if (!std::isfinite(lambda) || lambda < 0.0) throw ConfigError("lambda must be finite and >= 0");
    if (lambda0 && (!std::isfinite(*lambda0) || *lambda0 < 0.0)) {
        throw ConfigError("lambda0 must be finite and >= 0");
    }
    hawkes::validate(kernel);
    if (std::holds_alternative<PowerLawKernel>(kernel) && lambda0 && *lambda0 != lambda) {
        throw ConfigError("lambda0 != lambda needs an exponential kernel (the initial excess decays at rate beta)");
    }
}

double RateTransform::operator()(double baseline, double x) const {
    const double z = baseline + x;
    switch (kind) {
        case Kind::linear:
            if (z < 0.0) throw NumericalError("linear rate transform produced a negative intensity");
            return z;
        case Kind::relu:
            return z > 0.0 ? z : 0.0;
        case Kind::softplus:
            return z > 30.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    }
    return z;
}

void NonlinearSpec::validate() const {
    if (!std::isfinite(lambda) || lambda < 0.0) throw ConfigError("lambda must be finite and >= 0");
    hawkes::validate(kernel, /*allow_signed=*/true);
}

StationarityReport is_stationary(const HawkesModel& model) {
    const double eta = branching_ratio(model.kernel);
    return {eta < 1.0, eta};
}

}  // namespace hawkes
