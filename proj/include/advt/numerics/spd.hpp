#pragma once
// Dense symmetric positive-definite matrix with a precomputed Cholesky
// factor. Quadratic forms in the inverse always go through triangular
// solves, never an explicit inverse.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "advt/numerics/vec.hpp"

namespace advt {

class SpdMatrix {
public:
    // Validates symmetry (1e-12 relative) and positive pivots; throws
    // std::invalid_argument otherwise. `dense` is row-major d x d.
    SpdMatrix(std::size_t d, Vector dense);

    static SpdMatrix identity(std::size_t d);

    std::size_t dim() const noexcept { return d_; }
    double at(std::size_t i, std::size_t j) const noexcept { return a_[i * d_ + j]; }
    std::span<const double> dense() const noexcept { return a_; }
    bool is_identity() const noexcept;

    // sqrt(y' S^{-1} y) via one forward solve: ||L^{-1} y||_2.
    double inv_quad_norm(std::span<const double> y) const;

    // sqrt(w' S w).
    double quad_norm(std::span<const double> w) const;

    // S v
    Vector apply(std::span<const double> v) const;

    // S^{-1} v via forward + backward solve.
    Vector solve(std::span<const double> v) const;

    // Largest eigenvalue of S^{-1} by power iteration on the solve operator.
    double inv_largest_eigenvalue(double tol = 1e-10, int max_iters = 10000) const;

    // Eigendecomposition S = V diag(w) V' (cyclic Jacobi), computed on first
    // use and cached. Column j of V is the eigenvector for w[j].
    struct Eigen {
        Vector values;   // d, ascending
        Vector vectors;  // row-major d x d, vectors[i*d + j] = V(i,j)
    };
    const Eigen& eigen() const;

private:
    std::size_t d_;
    Vector a_;  // dense
    Vector l_;  // Cholesky factor, lower triangle row-major
    struct LazyEigen;
    std::shared_ptr<LazyEigen> eigen_cache_;
};

}  // namespace advt
