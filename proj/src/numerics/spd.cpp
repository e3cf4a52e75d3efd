#include "advt/numerics/spd.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace advt {

struct SpdMatrix::LazyEigen {
    std::once_flag once;
    Eigen value;
};

namespace {

// Cyclic Jacobi rotations for a symmetric matrix. Fine for the moderate
// dimensions the ellipsoid projection needs.
SpdMatrix::Eigen jacobi_eigen(std::size_t d, const Vector& dense) {
    Vector a = dense;
    Vector v(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;
    auto off = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) s += a[i * d + j] * a[i * d + j];
        return s;
    };
    double scale = 0.0;
    for (std::size_t i = 0; i < d; ++i) scale = std::max(scale, std::fabs(a[i * d + i]));
    const double tol = 1e-30 * std::max(1.0, scale * scale);
    for (int sweep = 0; sweep < 100 && off() > tol; ++sweep) {
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a[p * d + q];
                if (apq == 0.0) continue;
                const double app = a[p * d + p];
                const double aqq = a[q * d + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < d; ++k) {
                    const double akp = a[k * d + p];
                    const double akq = a[k * d + q];
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double apk = a[p * d + k];
                    const double aqk = a[q * d + k];
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double vkp = v[k * d + p];
                    const double vkq = v[k * d + q];
                    v[k * d + p] = c * vkp - s * vkq;
                    v[k * d + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    // sort ascending by eigenvalue, permuting columns of v
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return a[x * d + x] < a[y * d + y]; });
    SpdMatrix::Eigen e;
    e.values.resize(d);
    e.vectors.assign(d * d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        e.values[j] = a[idx[j] * d + idx[j]];
        for (std::size_t i = 0; i < d; ++i) e.vectors[i * d + j] = v[i * d + idx[j]];
    }
    return e;
}

}  // namespace

SpdMatrix::SpdMatrix(std::size_t d, Vector dense)
    : d_(d), a_(std::move(dense)), eigen_cache_(std::make_shared<LazyEigen>()) {
    if (a_.size() != d * d) throw std::invalid_argument("SpdMatrix: size mismatch");
    double scale = 0.0;
    for (double x : a_) scale = std::max(scale, std::fabs(x));
    if (scale == 0.0) throw std::invalid_argument("SpdMatrix: zero matrix");
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            if (std::fabs(a_[i * d + j] - a_[j * d + i]) > 1e-12 * scale) {
                throw std::invalid_argument("SpdMatrix: not symmetric");
            }
        }
    }
    // Cholesky, lower triangle
    l_.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a_[i * d + j];
            for (std::size_t k = 0; k < j; ++k) s -= l_[i * d + k] * l_[j * d + k];
            if (i == j) {
                if (s <= 0.0) throw std::invalid_argument("SpdMatrix: not positive definite");
                l_[i * d + i] = std::sqrt(s);
            } else {
                l_[i * d + j] = s / l_[j * d + j];
            }
        }
    }
}

SpdMatrix SpdMatrix::identity(std::size_t d) {
    Vector a(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) a[i * d + i] = 1.0;
    return SpdMatrix(d, std::move(a));
}

bool SpdMatrix::is_identity() const noexcept {
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j)
            if (a_[i * d_ + j] != (i == j ? 1.0 : 0.0)) return false;
    return true;
}

double SpdMatrix::inv_quad_norm(std::span<const double> y) const {
    if (y.size() != d_) throw std::invalid_argument("inv_quad_norm: dimension mismatch");
    // forward solve L u = y
    Vector u(d_);
    for (std::size_t i = 0; i < d_; ++i) {
        double s = y[i];
        for (std::size_t k = 0; k < i; ++k) s -= l_[i * d_ + k] * u[k];
        u[i] = s / l_[i * d_ + i];
    }
    return l2_norm(u);
}

double SpdMatrix::quad_norm(std::span<const double> w) const {
    if (w.size() != d_) throw std::invalid_argument("quad_norm: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < d_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d_; ++j) row += a_[i * d_ + j] * w[j];
        acc += w[i] * row;
    }
    return std::sqrt(std::max(acc, 0.0));
}

Vector SpdMatrix::apply(std::span<const double> v) const {
    if (v.size() != d_) throw std::invalid_argument("apply: dimension mismatch");
    Vector out(d_, 0.0);
    for (std::size_t i = 0; i < d_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d_; ++j) s += a_[i * d_ + j] * v[j];
        out[i] = s;
    }
    return out;
}

Vector SpdMatrix::solve(std::span<const double> v) const {
    if (v.size() != d_) throw std::invalid_argument("solve: dimension mismatch");
    Vector u(d_);
    for (std::size_t i = 0; i < d_; ++i) {
        double s = v[i];
        for (std::size_t k = 0; k < i; ++k) s -= l_[i * d_ + k] * u[k];
        u[i] = s / l_[i * d_ + i];
    }
    for (std::size_t ii = d_; ii-- > 0;) {
        double s = u[ii];
        for (std::size_t k = ii + 1; k < d_; ++k) s -= l_[k * d_ + ii] * u[k];
        u[ii] = s / l_[ii * d_ + ii];
    }
    return u;
}

double SpdMatrix::inv_largest_eigenvalue(double tol, int max_iters) const {
    Vector v(d_, 0.0);
    // deterministic start with a mild spread so no eigenvector is missed
    for (std::size_t i = 0; i < d_; ++i) v[i] = 1.0 + 0.37 * static_cast<double>(i % 7);
    double prev = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Vector w = solve(v);
        const double norm = l2_norm(w);
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < d_; ++i) w[i] /= norm;
        const double lambda = dot(w, solve(w));
        v = std::move(w);
        if (it > 2 && std::fabs(lambda - prev) <= tol * std::fabs(lambda)) return lambda;
        prev = lambda;
    }
    return prev;
}

const SpdMatrix::Eigen& SpdMatrix::eigen() const {
    std::call_once(eigen_cache_->once,
                   [this] { eigen_cache_->value = jacobi_eigen(d_, a_); });
    return eigen_cache_->value;
}

}  // namespace advt
