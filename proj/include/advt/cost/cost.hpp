#pragma once
// Adversarial indistinguishability structure on a binary task: the k x k
// cross-class distance matrix and its thresholded 0/1 graph. Two samples
// are joined by an edge exactly when their adversarial neighborhoods
// x + beta*B overlap, i.e. ||x_i - x_j||_B <= 2*beta.

#include <cstdint>
#include <string>
#include <vector>

#include "advt/data/dataset.hpp"
#include "advt/numerics/ball.hpp"

namespace advt::cost {

struct DistanceMatrix {
    std::size_t k = 0;
    std::size_t dim = 0;    // feature dimension of the task that produced it
    Vector values;          // row-major k x k, rows = class_pos, cols = class_neg

    double at(std::size_t i, std::size_t j) const noexcept { return values[i * k + j]; }
    double max_value() const noexcept;
};

// D[i][j] = ||pos_i - neg_j||_B. Rows can be computed by `threads` workers;
// every entry is computed independently so the result does not depend on
// the partitioning.
DistanceMatrix pairwise_distances(const data::BinaryTask& task, const BallSpec& ball,
                                  unsigned threads = 1);

// Bipartite adjacency as packed row bitsets.
class IndistGraph {
public:
    IndistGraph(std::size_t k) : k_(k), words_per_row_((k + 63) / 64), bits_(k * words_per_row_, 0) {}

    std::size_t k() const noexcept { return k_; }
    bool edge(std::size_t i, std::size_t j) const noexcept {
        return (bits_[i * words_per_row_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void set_edge(std::size_t i, std::size_t j) noexcept {
        bits_[i * words_per_row_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
    }
    const std::uint64_t* row(std::size_t i) const noexcept {
        return bits_.data() + i * words_per_row_;
    }
    std::size_t words_per_row() const noexcept { return words_per_row_; }
    std::size_t edge_count() const noexcept;

private:
    std::size_t k_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> bits_;
};

// Edge iff D_ij <= 2*beta; the boundary counts as an edge because the
// neighborhoods are closed balls.
IndistGraph threshold(const DistanceMatrix& d, double beta);

// Cache format: 16-byte header ("ADVD", u32 k, u32 dim, u32 zero) followed
// by k*k little-endian doubles, row-major.
void save_distance_matrix(const DistanceMatrix& d, const std::string& path);
DistanceMatrix load_distance_matrix(const std::string& path);

}  // namespace advt::cost
