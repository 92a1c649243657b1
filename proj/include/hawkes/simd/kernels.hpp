#pragma once

#include <span>
#include <string_view>

/// Data-parallel reductions behind the likelihood, intensity, moment and
/// integral-equation code. Every reduction has a portable scalar reference
/// and an AVX2/FMA variant; the variant is picked once at startup from the
/// CPU features. Setting HAWKES_SIMD=scalar in the environment forces the
/// scalar path.
///
/// The vector variants reorder the summation, so they agree with the scalar
/// reference to rounding (about 1e-15 relative per term), not bit-for-bit.
namespace hawkes::simd {

enum class Isa { scalar, avx2 };

[[nodiscard]] Isa active_isa() noexcept;
[[nodiscard]] bool isa_available(Isa isa) noexcept;
[[nodiscard]] std::string_view isa_name(Isa isa) noexcept;

/// sum_i exp(-beta * (t - times[i]))
[[nodiscard]] double sum_exp_decay(std::span<const double> times, double t, double beta);
/// sum_i w_i * (1 + (t - times[i]) / c)^(-exponent); an empty weight span means w_i = 1.
[[nodiscard]] double sum_power_decay(std::span<const double> times, std::span<const double> weights, double t,
                                     double c, double exponent);
[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);
/// sum_i a[i] * b[n-1-i]; the discrete convolution term at one output index.
[[nodiscard]] double dot_reversed(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double sum(std::span<const double> a);
[[nodiscard]] double sum_squares(std::span<const double> a);
[[nodiscard]] double sum_log(std::span<const double> a);

// Explicit-ISA overloads, used by the equivalence tests and benchmarks.
// Requesting an ISA the CPU lacks throws std::runtime_error.
[[nodiscard]] double sum_exp_decay(Isa isa, std::span<const double> times, double t, double beta);
[[nodiscard]] double sum_power_decay(Isa isa, std::span<const double> times, std::span<const double> weights,
                                     double t, double c, double exponent);
[[nodiscard]] double dot(Isa isa, std::span<const double> a, std::span<const double> b);
[[nodiscard]] double dot_reversed(Isa isa, std::span<const double> a, std::span<const double> b);
[[nodiscard]] double sum(Isa isa, std::span<const double> a);
[[nodiscard]] double sum_squares(Isa isa, std::span<const double> a);
[[nodiscard]] double sum_log(Isa isa, std::span<const double> a);

}  // namespace hawkes::simd
