#include "advt/kernels/kernels.hpp"

#ifdef ADVT_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <cmath>

// Four-lane double kernels with FMA. Each function handles the tail with the
// scalar loop so results differ from the reference only by reassociation of
// the accumulator lanes.

namespace advt::kernels::avx2 {

namespace {

__attribute__((target("avx2,fma"))) inline double hsum(__m256d v) noexcept {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

__attribute__((target("avx2,fma"))) inline double hmax(__m256d v) noexcept {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, shuf));
}

}  // namespace

__attribute__((target("avx2,fma")))
double l2_sq(const double* a, const double* b, std::size_t n) noexcept {
    const std::size_t n4 = n & ~std::size_t{3};
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double r = hsum(acc);
    for (std::size_t i = n4; i < n; ++i) {
        const double d = a[i] - b[i];
        r += d * d;
    }
    return r;
}

__attribute__((target("avx2,fma")))
double l1(const double* a, const double* b, std::size_t n) noexcept {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const std::size_t n4 = n & ~std::size_t{3};
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    double r = hsum(acc);
    for (std::size_t i = n4; i < n; ++i) r += std::fabs(a[i] - b[i]);
    return r;
}

__attribute__((target("avx2,fma")))
double linf(const double* a, const double* b, std::size_t n) noexcept {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const std::size_t n4 = n & ~std::size_t{3};
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    double r = hmax(acc);
    for (std::size_t i = n4; i < n; ++i) {
        const double d = std::fabs(a[i] - b[i]);
        if (d > r) r = d;
    }
    return r;
}

__attribute__((target("avx2,fma")))
double dot(const double* a, const double* b, std::size_t n) noexcept {
    const std::size_t n4 = n & ~std::size_t{3};
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double r = hsum(acc);
    for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
    return r;
}

}  // namespace advt::kernels::avx2

#endif  // ADVT_HAVE_AVX2_KERNELS
