#pragma once
// Pairwise-distance inner kernels: scalar reference implementations plus
// SIMD variants selected once at startup from CPU features. All entry
// points below go through the dispatched function pointers; the scalar
// versions stay callable for equivalence tests.

#include <cstddef>

namespace advt::kernels {

// Reference kernels. Plain loops, no reassociation tricks.
namespace scalar {
double l2_sq(const double* a, const double* b, std::size_t n) noexcept;
double l1(const double* a, const double* b, std::size_t n) noexcept;
double linf(const double* a, const double* b, std::size_t n) noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define ADVT_HAVE_AVX2_KERNELS 1
namespace avx2 {
double l2_sq(const double* a, const double* b, std::size_t n) noexcept;
double l1(const double* a, const double* b, std::size_t n) noexcept;
double linf(const double* a, const double* b, std::size_t n) noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace avx2
#endif

using kernel_fn = double (*)(const double*, const double*, std::size_t) noexcept;

// Dispatched entry points. Selection happens once; setting the environment
// variable ADVT_KERNELS=scalar before first use forces the reference path.
double l2_sq(const double* a, const double* b, std::size_t n) noexcept;
double l1(const double* a, const double* b, std::size_t n) noexcept;
double linf(const double* a, const double* b, std::size_t n) noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;

// Name of the selected backend: "avx2" or "scalar".
const char* active_backend() noexcept;

}  // namespace advt::kernels
