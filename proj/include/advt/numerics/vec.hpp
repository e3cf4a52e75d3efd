#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace advt {

using Vector = std::vector<double>;

double l2_norm(std::span<const double> v) noexcept;
double l1_norm(std::span<const double> v) noexcept;
double linf_norm(std::span<const double> v) noexcept;
double dot(std::span<const double> a, std::span<const double> b);

// a - b
Vector sub(std::span<const double> a, std::span<const double> b);
Vector scaled(std::span<const double> v, double c);

}  // namespace advt
