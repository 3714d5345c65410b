// Compiled with -mavx2 -mfma. Only reached after a CPUID check in dispatch.cpp.

#include <immintrin.h>

#include <cmath>
#include <numbers>

#include "autocorr/simd/kernels.hpp"

namespace autocorr::simd {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i];
    return s;
}

// Four frequencies per lane group; the j loop runs the phase recurrence in parallel.
void phase_sum_avx2(const double* values, std::size_t n, double x0, double dx, const double* xi,
                    std::size_t count, double* re, double* im) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        alignas(32) double w[4], rc[4], rs[4], zc[4], zs[4];
        for (int l = 0; l < 4; ++l) {
            w[l] = two_pi * xi[k + l];
            rc[l] = std::cos(w[l] * dx);
            rs[l] = -std::sin(w[l] * dx);
        }
        const __m256d vrc = _mm256_load_pd(rc), vrs = _mm256_load_pd(rs);
        __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
        __m256d vzc = _mm256_setzero_pd(), vzs = _mm256_setzero_pd();
        for (std::size_t j = 0; j < n; ++j) {
            if (j % kPhaseReseed == 0) {
                const double x = x0 + static_cast<double>(j) * dx;
                for (int l = 0; l < 4; ++l) {
                    zc[l] = std::cos(w[l] * x);
                    zs[l] = -std::sin(w[l] * x);
                }
                vzc = _mm256_load_pd(zc);
                vzs = _mm256_load_pd(zs);
            }
            const __m256d v = _mm256_set1_pd(values[j]);
            acc_re = _mm256_fmadd_pd(v, vzc, acc_re);
            acc_im = _mm256_fmadd_pd(v, vzs, acc_im);
            const __m256d nc = _mm256_fmsub_pd(vzc, vrc, _mm256_mul_pd(vzs, vrs));
            vzs = _mm256_fmadd_pd(vzc, vrs, _mm256_mul_pd(vzs, vrc));
            vzc = nc;
        }
        _mm256_storeu_pd(re + k, acc_re);
        _mm256_storeu_pd(im + k, acc_im);
    }
    if (k < count)
        detail::kScalarTable.phase_sum(values, n, x0, dx, xi + k, count - k, re + k, im + k);
}

}  // namespace

namespace detail {
const KernelTable kAvx2Table{Backend::avx2, &dot_avx2, &sum_avx2, &phase_sum_avx2};
}

}  // namespace autocorr::simd
