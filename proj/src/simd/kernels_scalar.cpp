#include <cmath>

#include "kernel_table.hpp"

namespace hawkes::simd::detail {

namespace {

double sum_exp_decay(const double* times, std::size_t n, double t, double beta) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::exp(-beta * (t - times[i]));
    return acc;
}

double sum_power_decay(const double* times, const double* weights, std::size_t n, double t, double c,
                       double exponent) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::exp(-exponent * std::log(1.0 + (t - times[i]) / c));
        acc += weights ? weights[i] * v : v;
    }
    return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double dot_reversed(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[n - 1 - i];
    return acc;
}

double sum(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

double sum_squares(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
    return acc;
}

double sum_log(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::log(a[i]);
    return acc;
}

}  // namespace

const KernelTable scalar_table{
    &sum_exp_decay, &sum_power_decay, &dot, &dot_reversed, &sum, &sum_squares, &sum_log,
};

}  // namespace hawkes::simd::detail
