#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hawkes {

/// Seeded random source shared by all simulators.
///
/// Algorithm "mt19937_64+splitmix64/v1": a std::mt19937_64 engine seeded with
/// splitmix64(seed). split(i) derives an independent child generator whose
/// seed is splitmix64(seed ^ splitmix64(i + 1)), so work that is split by index
/// (cluster roots, replications, restarts) is reproducible regardless of the
/// order in which it runs. Uniforms take the top 53 bits of one engine draw.
class Rng {
public:
    static constexpr std::string_view algorithm = "mt19937_64+splitmix64/v1";

    explicit Rng(std::uint64_t seed = 20240601ULL);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] Rng split(std::uint64_t index) const;

    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Exponential with the given rate; +infinity when rate is 0.
    double exponential(double rate);
    double normal();
    std::uint64_t poisson(double mean);
    /// Gamma with shape k and rate r (mean k / r).
    double gamma(double shape, double rate);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace hawkes
