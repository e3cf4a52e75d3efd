#include "advt/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace advt::kernels {

namespace {

struct Backend {
    kernel_fn l2_sq;
    kernel_fn l1;
    kernel_fn linf;
    kernel_fn dot;
    const char* name;
};

Backend select() noexcept {
    const char* force = std::getenv("ADVT_KERNELS");
    const bool want_scalar = force != nullptr && std::strcmp(force, "scalar") == 0;
#ifdef ADVT_HAVE_AVX2_KERNELS
    if (!want_scalar && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return {&avx2::l2_sq, &avx2::l1, &avx2::linf, &avx2::dot, "avx2"};
    }
#else
    (void)want_scalar;
#endif
    return {&scalar::l2_sq, &scalar::l1, &scalar::linf, &scalar::dot, "scalar"};
}

const Backend& backend() noexcept {
    static const Backend b = select();
    return b;
}

}  // namespace

double l2_sq(const double* a, const double* b, std::size_t n) noexcept {
    return backend().l2_sq(a, b, n);
}
double l1(const double* a, const double* b, std::size_t n) noexcept {
    return backend().l1(a, b, n);
}
double linf(const double* a, const double* b, std::size_t n) noexcept {
    return backend().linf(a, b, n);
}
double dot(const double* a, const double* b, std::size_t n) noexcept {
    return backend().dot(a, b, n);
}
const char* active_backend() noexcept { return backend().name; }

}  // namespace advt::kernels
