#pragma once

#include <string>
#include <variant>

namespace hawkes {

/// mu(t) = alpha * exp(-beta t). alpha may be negative only inside a NonlinearSpec.
struct ExpKernel {
    double alpha = 0.0;
    double beta = 1.0;
};

/// Omori-Utsu kernel mu(t) = K (t + c)^(-p).
struct PowerLawKernel {
    double K = 1.0;
    double c = 1.0;
    double p = 2.0;
};

using Kernel = std::variant<ExpKernel, PowerLawKernel>;

/// Throws ConfigError if the kernel parameters are out of range.
void validate(const ExpKernel& k, bool allow_signed = false);
void validate(const PowerLawKernel& k);
void validate(const Kernel& k);

/// mu(t) for t >= 0; std::domain_error for negative t.
[[nodiscard]] double kernel_eval(const Kernel& k, double t);

/// Integral of mu over [0, t]. t may be +infinity.
[[nodiscard]] double kernel_integral(const Kernel& k, double t);

/// Expected number of direct offspring per arrival: the integral of mu over [0, inf).
[[nodiscard]] double branching_ratio(const Kernel& k);

/// Multiplies the kernel amplitude by s (alpha or K).
[[nodiscard]] Kernel scaled(const Kernel& k, double s);

[[nodiscard]] std::string describe(const Kernel& k);

}  // namespace hawkes
