#include "advt/matching/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace advt::matching {

namespace {

constexpr std::int32_t kFree = -1;

// One BFS phase: layers the free rows, returns false when no augmenting
// path exists. dist is in edges from a free row.
bool hk_bfs(const cost::IndistGraph& g, const MatchingResult& m,
            std::vector<std::int32_t>& dist) {
    const std::size_t k = g.k();
    std::vector<std::size_t> queue;
    queue.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (m.row_to_col[i] == kFree) {
            dist[i] = 0;
            queue.push_back(i);
        } else {
            dist[i] = -1;
        }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t i = queue[head];
        const std::uint64_t* row = g.row(i);
        for (std::size_t w = 0; w < g.words_per_row(); ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                const std::int32_t owner = m.col_to_row[j];
                if (owner == kFree) {
                    found = true;
                } else if (dist[static_cast<std::size_t>(owner)] == -1) {
                    dist[static_cast<std::size_t>(owner)] = dist[i] + 1;
                    queue.push_back(static_cast<std::size_t>(owner));
                }
            }
        }
    }
    return found;
}

bool hk_dfs(const cost::IndistGraph& g, MatchingResult& m, std::vector<std::int32_t>& dist,
            std::size_t i) {
    const std::uint64_t* row = g.row(i);
    for (std::size_t w = 0; w < g.words_per_row(); ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
            const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            const std::int32_t owner = m.col_to_row[j];
            if (owner == kFree ||
                (dist[static_cast<std::size_t>(owner)] == dist[i] + 1 &&
                 hk_dfs(g, m, dist, static_cast<std::size_t>(owner)))) {
                m.row_to_col[i] = static_cast<std::int32_t>(j);
                m.col_to_row[j] = static_cast<std::int32_t>(i);
                return true;
            }
        }
    }
    dist[i] = -1;  // dead end for this phase
    return false;
}

}  // namespace

MatchingResult max_matching(const cost::IndistGraph& graph) {
    const std::size_t k = graph.k();
    MatchingResult m;
    m.row_to_col.assign(k, kFree);
    m.col_to_row.assign(k, kFree);
    std::vector<std::int32_t> dist(k, -1);
    while (hk_bfs(graph, m, dist)) {
        for (std::size_t i = 0; i < k; ++i) {
            if (m.row_to_col[i] == kFree && hk_dfs(graph, m, dist, i)) ++m.size;
        }
    }
    return m;
}

RobustnessBound transport_cost(std::size_t matching_size, std::size_t k) {
    if (matching_size > k) throw std::invalid_argument("matching size exceeds k");
    RobustnessBound b;
    b.matching_size = matching_size;
    b.k = k;
    // single rounding from the exact rationals (k-M)/k and M/(2k)
    b.transport_cost = static_cast<double>(k - matching_size) / static_cast<double>(k);
    b.min_loss = static_cast<double>(matching_size) / (2.0 * static_cast<double>(k));
    return b;
}

std::size_t brute_force_min_weight_count(const cost::IndistGraph& graph) {
    const std::size_t k = graph.k();
    if (k > 10) throw std::invalid_argument("brute force matching limited to k <= 10");
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = k;
    do {
        std::size_t cost = 0;
        for (std::size_t i = 0; i < k && cost < best; ++i) {
            if (!graph.edge(i, perm[i])) ++cost;
        }
        best = std::min(best, cost);
    } while (best > 0 && std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double brute_force_min_weight(const cost::IndistGraph& graph) {
    return static_cast<double>(brute_force_min_weight_count(graph)) /
           static_cast<double>(graph.k());
}

std::int64_t WitnessPotentials::dual_numerator() const noexcept {
    std::int64_t num = 0;
    for (std::uint8_t v : g) num += v;
    for (std::uint8_t v : f) num -= v;
    return num;
}

WitnessPotentials witness_potentials(const cost::IndistGraph& graph,
                                     const MatchingResult& m) {
    const std::size_t k = graph.k();
    // Alternating BFS from unmatched rows: rows -> cols over any edge,
    // cols -> rows over matching edges. Konig: the cover is
    // (rows not reached) union (cols reached); potentials are the
    // indicators f = [row in cover], g = [col not in cover].
    std::vector<std::uint8_t> row_reached(k, 0), col_reached(k, 0);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < k; ++i) {
        if (m.row_to_col[i] == kFree) {
            row_reached[i] = 1;
            queue.push_back(i);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t i = queue[head];
        const std::uint64_t* row = graph.row(i);
        for (std::size_t w = 0; w < graph.words_per_row(); ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                if (col_reached[j]) continue;
                col_reached[j] = 1;
                const std::int32_t owner = m.col_to_row[j];
                if (owner != kFree && !row_reached[static_cast<std::size_t>(owner)]) {
                    row_reached[static_cast<std::size_t>(owner)] = 1;
                    queue.push_back(static_cast<std::size_t>(owner));
                }
            }
        }
    }
    WitnessPotentials pot;
    pot.f.resize(k);
    pot.g.resize(k);
    for (std::size_t i = 0; i < k; ++i) pot.f[i] = row_reached[i] ? 0 : 1;
    for (std::size_t j = 0; j < k; ++j) pot.g[j] = col_reached[j] ? 0 : 1;
    if (pot.dual_numerator() != static_cast<std::int64_t>(k) -
                                    static_cast<std::int64_t>(m.size)) {
        throw std::logic_error("witness potentials: matching is not maximum");
    }
    return pot;
}

int classify_with_witness(const WitnessPotentials& pot, std::span<const double> x,
                          const data::BinaryTask& task, const BallSpec& ball,
                          double beta) {
    const std::size_t k = task.k();
    auto nearest = [&](const std::vector<Vector>& cls, const std::vector<std::uint8_t>& mark,
                       std::uint8_t want) {
        double best = std::numeric_limits<double>::infinity();
        bool any = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (mark[i] != want) continue;
            any = true;
            best = std::min(best, ball_norm(sub(x, cls[i]), ball));
        }
        if (!any) {
            // no anchors on this side; fall back to the whole class
            for (std::size_t i = 0; i < k; ++i)
                best = std::min(best, ball_norm(sub(x, cls[i]), ball));
        }
        return best;
    };
    const double d_pos = nearest(task.class_pos, pot.f, 0);
    const double d_neg = nearest(task.class_neg, pot.g, 1);
    if (d_pos <= beta) return 1;
    if (d_neg <= beta) return -1;
    return d_pos <= d_neg ? 1 : -1;
}

}  // namespace advt::matching
