#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hawkes/simd/kernels.hpp"
#include "kernel_table.hpp"

namespace hawkes::simd {

namespace detail {
#ifndef HAWKES_HAVE_AVX2
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() noexcept {
#if defined(HAWKES_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa select_isa() noexcept {
    const char* env = std::getenv("HAWKES_SIMD");
    if (env != nullptr && std::string(env) == "scalar") return Isa::scalar;
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

const detail::KernelTable& table_for(Isa isa) {
    if (isa == Isa::avx2) {
        if (!cpu_has_avx2()) throw std::runtime_error("AVX2 kernels requested but not available on this CPU");
        return *detail::avx2_table();
    }
    return detail::scalar_table;
}

const detail::KernelTable& active() noexcept {
    static const detail::KernelTable& t = active_isa() == Isa::avx2 ? *detail::avx2_table() : detail::scalar_table;
    return t;
}

const double* weights_or_null(std::span<const double> times, std::span<const double> weights) {
    if (weights.empty()) return nullptr;
    if (weights.size() != times.size()) throw std::invalid_argument("weights length differs from times length");
    return weights.data();
}

void require_same_size(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("operand lengths differ");
}

}  // namespace

Isa active_isa() noexcept {
    static const Isa isa = select_isa();
    return isa;
}

bool isa_available(Isa isa) noexcept { return isa == Isa::scalar || cpu_has_avx2(); }

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double sum_exp_decay(std::span<const double> times, double t, double beta) {
    return active().sum_exp_decay(times.data(), times.size(), t, beta);
}
double sum_power_decay(std::span<const double> times, std::span<const double> weights, double t, double c,
                       double exponent) {
    return active().sum_power_decay(times.data(), weights_or_null(times, weights), times.size(), t, c, exponent);
}
double dot(std::span<const double> a, std::span<const double> b) {
    require_same_size(a, b);
    return active().dot(a.data(), b.data(), a.size());
}
double dot_reversed(std::span<const double> a, std::span<const double> b) {
    require_same_size(a, b);
    return active().dot_reversed(a.data(), b.data(), a.size());
}
double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }
double sum_squares(std::span<const double> a) { return active().sum_squares(a.data(), a.size()); }
double sum_log(std::span<const double> a) { return active().sum_log(a.data(), a.size()); }

double sum_exp_decay(Isa isa, std::span<const double> times, double t, double beta) {
    return table_for(isa).sum_exp_decay(times.data(), times.size(), t, beta);
}
double sum_power_decay(Isa isa, std::span<const double> times, std::span<const double> weights, double t, double c,
                       double exponent) {
    return table_for(isa).sum_power_decay(times.data(), weights_or_null(times, weights), times.size(), t, c,
                                          exponent);
}
double dot(Isa isa, std::span<const double> a, std::span<const double> b) {
    require_same_size(a, b);
    return table_for(isa).dot(a.data(), b.data(), a.size());
}
double dot_reversed(Isa isa, std::span<const double> a, std::span<const double> b) {
    require_same_size(a, b);
    return table_for(isa).dot_reversed(a.data(), b.data(), a.size());
}
double sum(Isa isa, std::span<const double> a) { return table_for(isa).sum(a.data(), a.size()); }
double sum_squares(Isa isa, std::span<const double> a) { return table_for(isa).sum_squares(a.data(), a.size()); }
double sum_log(Isa isa, std::span<const double> a) { return table_for(isa).sum_log(a.data(), a.size()); }

}  // namespace hawkes::simd
