#pragma once

// Raw-pointer entry points for one instruction set. The ISA-specific
// translation units are compiled with different target flags, so they only
// see this header and <immintrin.h>; no inline library templates cross the
// boundary.

#include <cstddef>

namespace hawkes::simd::detail {

struct KernelTable {
    double (*sum_exp_decay)(const double* times, std::size_t n, double t, double beta);
    double (*sum_power_decay)(const double* times, const double* weights, std::size_t n, double t, double c,
                              double exponent);
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*dot_reversed)(const double* a, const double* b, std::size_t n);
    double (*sum)(const double* a, std::size_t n);
    double (*sum_squares)(const double* a, std::size_t n);
    double (*sum_log)(const double* a, std::size_t n);
};

extern const KernelTable scalar_table;

// Defined only when the AVX2 unit is part of the build.
const KernelTable* avx2_table() noexcept;

}  // namespace hawkes::simd::detail
