#pragma once
// Optimal transport under the 0/1 adversarial cost on empirical classes.
// With unit weights on k samples per class, the minimum-weight perfect
// pairing costs (k - M)/k where M is the maximum matching of the
// zero-cost (indistinguishability) graph; the minimum classification
// loss any hypothesis can achieve is M/(2k). Witness potentials come
// from the minimum vertex cover via Konig's construction.

#include <cstdint>
#include <vector>

#include "advt/cost/cost.hpp"
#include "advt/data/dataset.hpp"
#include "advt/numerics/ball.hpp"

namespace advt::matching {

struct MatchingResult {
    std::vector<std::int32_t> row_to_col;  // -1 when unmatched
    std::vector<std::int32_t> col_to_row;
    std::size_t size = 0;
};

// Maximum-cardinality bipartite matching, Hopcroft-Karp. Deterministic:
// vertices are scanned in index order.
MatchingResult max_matching(const cost::IndistGraph& graph);

struct RobustnessBound {
    std::size_t matching_size = 0;
    std::size_t k = 0;
    double transport_cost = 0.0;  // (k - M)/k
    double min_loss = 0.0;        // M/(2k)
};

RobustnessBound transport_cost(std::size_t matching_size, std::size_t k);

// Exhaustive minimum over all perfect pairings of the mean 0/1 cost.
// Test oracle; guarded to k <= 10.
double brute_force_min_weight(const cost::IndistGraph& graph);
std::size_t brute_force_min_weight_count(const cost::IndistGraph& graph);

// {0,1} potentials f (rows) and g (columns) with g(j) - f(i) <= cost(i,j)
// for every pair and mean(g) - mean(f) = (k - M)/k.
struct WitnessPotentials {
    std::vector<std::uint8_t> f;
    std::vector<std::uint8_t> g;

    // exact integer dual value numerator: sum(g) - sum(f); value = num/k
    std::int64_t dual_numerator() const noexcept;
};

// Requires a maximum matching; throws std::logic_error if the dual value
// does not meet (k - M)/k, which happens exactly when `m` is not maximum.
WitnessPotentials witness_potentials(const cost::IndistGraph& graph,
                                     const MatchingResult& m);

// Demonstration classifier lifted from the potentials: samples with f = 0
// anchor the +1 region, samples with g = 1 anchor the -1 region; a point
// within beta of an anchor inherits its label (admissibility keeps anchor
// pairs more than 2*beta apart, so the two cases cannot collide), anything
// else goes to the nearer anchor set with ties broken toward +1.
int classify_with_witness(const WitnessPotentials& pot, std::span<const double> x,
                          const data::BinaryTask& task, const BallSpec& ball,
                          double beta);

}  // namespace advt::matching
