#include "hawkes/core/kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "hawkes/core/error.hpp"

namespace hawkes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void validate(const ExpKernel& k, bool allow_signed) {
    if (!std::isfinite(k.alpha) || (!allow_signed && k.alpha < 0.0)) {
        throw ConfigError(allow_signed ? "exponential kernel alpha must be finite"
                                       : "exponential kernel alpha must be finite and >= 0");
    }
    if (!std::isfinite(k.beta) || k.beta <= 0.0) {
        throw ConfigError("exponential kernel beta must be finite and > 0");
    }
}

void validate(const PowerLawKernel& k) {
    if (!std::isfinite(k.K) || k.K <= 0.0) throw ConfigError("power-law kernel K must be > 0");
    if (!std::isfinite(k.c) || k.c <= 0.0) throw ConfigError("power-law kernel c must be > 0");
    if (!std::isfinite(k.p) || k.p <= 1.0) throw ConfigError("power-law kernel p must be > 1");
}

void validate(const Kernel& k) {
    std::visit([](const auto& v) { validate(v); }, k);
}

double kernel_eval(const Kernel& k, double t) {
    if (!(t >= 0.0)) throw std::domain_error("kernel evaluated at negative time");
    return std::visit(overloaded{
                          [t](const ExpKernel& e) { return e.alpha * std::exp(-e.beta * t); },
                          [t](const PowerLawKernel& p) { return p.K * std::pow(t + p.c, -p.p); },
                      },
                      k);
}

double kernel_integral(const Kernel& k, double t) {
    if (!(t >= 0.0)) throw std::domain_error("kernel integrated over a negative interval");
    return std::visit(overloaded{
                          [t](const ExpKernel& e) { return -(e.alpha / e.beta) * std::expm1(-e.beta * t); },
                          [t](const PowerLawKernel& p) {
                              const double head = std::pow(p.c, 1.0 - p.p);
                              const double tail = std::isinf(t) ? 0.0 : std::pow(t + p.c, 1.0 - p.p);
                              return p.K / (p.p - 1.0) * (head - tail);
                          },
                      },
                      k);
}

double branching_ratio(const Kernel& k) {
    return kernel_integral(k, std::numeric_limits<double>::infinity());
}

Kernel scaled(const Kernel& k, double s) {
    return std::visit(overloaded{
                          [s](const ExpKernel& e) -> Kernel { return ExpKernel{e.alpha * s, e.beta}; },
                          [s](const PowerLawKernel& p) -> Kernel { return PowerLawKernel{p.K * s, p.c, p.p}; },
                      },
                      k);
}

std::string describe(const Kernel& k) {
    return std::visit(overloaded{
                          [](const ExpKernel& e) { return fmt::format("exp(alpha={}, beta={})", e.alpha, e.beta); },
                          [](const PowerLawKernel& p) {
                              return fmt::format("powerlaw(K={}, c={}, p={})", p.K, p.c, p.p);
                          },
                      },
                      k);
}

}  // namespace hawkes
