// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached through the
// dispatcher after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "kernel_table.hpp"

namespace hawkes::simd::detail {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// exp(x) to ~1 ulp on [-708.39, 709.78]; returns 0 below that range.
// Range reduction x = n ln2 + r, |r| <= ln2/2, then a degree-13 Taylor
// polynomial (truncation error < 4e-18 relative) and an exponent-field scale.
inline __m256d exp_pd(__m256d x) {
    const __m256d lo_limit = _mm256_set1_pd(-708.3964185322641);
    const __m256d hi_limit = _mm256_set1_pd(709.782712893384);
    const __m256d underflow = _mm256_cmp_pd(x, lo_limit, _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, lo_limit), hi_limit);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125e-1), x);
    r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212e-6), r);

    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // 2^n through the exponent field; n + 1.5*2^52 leaves n in the low mantissa bits.
    const __m256d magic = _mm256_set1_pd(6755399441055744.0);
    const __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)), _mm256_castpd_si256(magic));
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
    const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(underflow, result);
}

// log(x) for positive normal x. x = m 2^e with m in [sqrt(1/2), sqrt(2)),
// log m = 2 atanh(f), f = (m-1)/(m+1), |f| <= 0.1716; eleven odd terms.
inline __m256d log_pd(__m256d x) {
    const __m256i xi = _mm256_castpd_si256(x);
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(xi, mant_mask), one_bits));

    const __m256i ebits = _mm256_srli_epi64(xi, 52);
    const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(ebits, _mm256_castpd_si256(two52))), two52);
    e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d f = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d s = _mm256_mul_pd(f, f);
    __m256d p = _mm256_set1_pd(1.0 / 21.0);
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 19.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 17.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 15.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, s, _mm256_set1_pd(1.0 / 3.0));
    // log m = 2f + 2f s p
    const __m256d two_f = _mm256_add_pd(f, f);
    const __m256d log_m = _mm256_fmadd_pd(_mm256_mul_pd(two_f, s), p, two_f);

    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    return _mm256_fmadd_pd(e, ln2_hi, _mm256_fmadd_pd(e, ln2_lo, log_m));
}

double sum_exp_decay(const double* times, std::size_t n, double t, double beta) {
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d vnb = _mm256_set1_pd(-beta);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(vt, _mm256_loadu_pd(times + i));
        const __m256d d1 = _mm256_sub_pd(vt, _mm256_loadu_pd(times + i + 4));
        acc0 = _mm256_add_pd(acc0, exp_pd(_mm256_mul_pd(vnb, d0)));
        acc1 = _mm256_add_pd(acc1, exp_pd(_mm256_mul_pd(vnb, d1)));
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, exp_pd(_mm256_mul_pd(vnb, _mm256_sub_pd(vt, _mm256_loadu_pd(times + i)))));
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += std::exp(-beta * (t - times[i]));
    return acc;
}

double sum_power_decay(const double* times, const double* weights, std::size_t n, double t, double c,
                       double exponent) {
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d inv_c = _mm256_set1_pd(1.0 / c);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d neg_exp = _mm256_set1_pd(-exponent);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d base = _mm256_fmadd_pd(_mm256_sub_pd(vt, _mm256_loadu_pd(times + i)), inv_c, one);
        __m256d v = exp_pd(_mm256_mul_pd(neg_exp, log_pd(base)));
        if (weights) v = _mm256_mul_pd(v, _mm256_loadu_pd(weights + i));
        acc = _mm256_add_pd(acc, v);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double v = std::exp(-exponent * std::log(1.0 + (t - times[i]) / c));
        total += weights ? weights[i] * v : v;
    }
    return total;
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double dot_reversed(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // b[n-1-i-3 .. n-1-i] reversed lines up with a[i .. i+3]
        const __m256d vb = _mm256_permute4x64_pd(_mm256_loadu_pd(b + (n - 4 - i)), 0x1B);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), vb, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += a[i] * b[n - 1 - i];
    return total;
}

double sum(const double* a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i];
    return acc;
}

double sum_squares(const double* a, std::size_t n) { return dot(a, a, n); }

double sum_log(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, log_pd(_mm256_loadu_pd(a + i)));
    double total = hsum(acc);
    for (; i < n; ++i) total += std::log(a[i]);
    return total;
}

const KernelTable table{
    &sum_exp_decay, &sum_power_decay, &dot, &dot_reversed, &sum, &sum_squares, &sum_log,
};

}  // namespace

const KernelTable* avx2_table() noexcept { return &table; }

}  // namespace hawkes::simd::detail
