#include "advt/numerics/vec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "advt/kernels/kernels.hpp"

namespace advt {

double l2_norm(std::span<const double> v) noexcept {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double l1_norm(std::span<const double> v) noexcept {
    double acc = 0.0;
    for (double x : v) acc += std::fabs(x);
    return acc;
}

double linf_norm(std::span<const double> v) noexcept {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    return kernels::dot(a.data(), b.data(), a.size());
}

Vector sub(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vector scaled(std::span<const double> v, double c) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

}  // namespace advt
