#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "advt/cost/cost.hpp"
#include "advt/numerics/rng.hpp"

using namespace advt;
using namespace advt::cost;

namespace {

data::BinaryTask random_task(std::size_t k, std::size_t d, RngStream& rng) {
    std::vector<Vector> pos, neg;
    for (std::size_t i = 0; i < k; ++i) {
        Vector a(d), b(d);
        for (double& x : a) x = rng.next_gaussian();
        for (double& x : b) x = rng.next_gaussian();
        pos.push_back(std::move(a));
        neg.push_back(std::move(b));
    }
    return data::make_binary_task(std::move(pos), std::move(neg));
}

// plain per-pair recomputation, no kernels
double naive_distance(const Vector& a, const Vector& b, const BallSpec& ball) {
    return ball_norm(sub(a, b), ball);
}

}  // namespace

TEST_CASE("pairwise distance hand values") {
    const auto same = data::make_binary_task({Vector{1.0, 2.0}}, {Vector{1.0, 2.0}});
    CHECK(pairwise_distances(same, BallSpec::l2()).at(0, 0) == 0.0);

    const auto pair = data::make_binary_task({Vector{0.0, 0.0}}, {Vector{3.0, 4.0}});
    CHECK(pairwise_distances(pair, BallSpec::l2()).at(0, 0) == doctest::Approx(5.0));
}

TEST_CASE("pairwise distances equal the per-pair oracle") {
    RngStream rng(21, 0);
    const auto task = random_task(8, 13, rng);
    for (const auto& ball : {BallSpec::l1(), BallSpec::l2(), BallSpec::linf()}) {
        const auto dm = pairwise_distances(task, ball);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) {
                const double oracle = naive_distance(task.class_pos[i], task.class_neg[j], ball);
                CHECK(dm.at(i, j) == doctest::Approx(oracle).epsilon(1e-13));
            }
    }
}

TEST_CASE("threaded distance computation matches sequential") {
    RngStream rng(22, 0);
    const auto task = random_task(17, 9, rng);
    const auto seq = pairwise_distances(task, BallSpec::l2(), 1);
    const auto par = pairwise_distances(task, BallSpec::l2(), 4);
    CHECK(seq.values == par.values);
}

TEST_CASE("threshold basics and the closed-ball boundary") {
    DistanceMatrix d;
    d.k = 1;
    d.dim = 1;
    d.values = {2.0};
    CHECK(threshold(d, 1.0).edge(0, 0));        // boundary D = 2*beta is an edge
    CHECK_FALSE(threshold(d, 0.999999).edge(0, 0));

    RngStream rng(23, 0);
    const auto task = random_task(6, 4, rng);
    const auto dm = pairwise_distances(task, BallSpec::l2());
    const auto empty = threshold(dm, 0.0);
    CHECK(empty.edge_count() == 0);  // no duplicate points in a continuous sample
    const auto full = threshold(dm, dm.max_value() / 2.0);
    CHECK(full.edge_count() == 36);
}

TEST_CASE("edge sets grow monotonically in beta") {
    RngStream rng(24, 0);
    const auto task = random_task(10, 3, rng);
    const auto dm = pairwise_distances(task, BallSpec::l1());
    IndistGraph prev = threshold(dm, 0.0);
    for (double beta : {0.2, 0.5, 0.9, 1.4, 2.2, 4.0}) {
        const IndistGraph cur = threshold(dm, beta);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 10; ++j)
                if (prev.edge(i, j)) CHECK(cur.edge(i, j));
        prev = cur;
    }
}

TEST_CASE("swapping classes transposes the graph") {
    RngStream rng(25, 0);
    auto task = random_task(7, 5, rng);
    const auto dm = pairwise_distances(task, BallSpec::linf());
    auto swapped = data::make_binary_task(task.class_neg, task.class_pos);
    const auto dm_t = pairwise_distances(swapped, BallSpec::linf());
    const auto g = threshold(dm, 0.8);
    const auto gt = threshold(dm_t, 0.8);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) CHECK(g.edge(i, j) == gt.edge(j, i));
}

TEST_CASE("edge criterion equals midpoint reachability for norm balls") {
    // D_ij <= 2 beta iff the midpoint lies within beta of both endpoints
    RngStream rng(26, 0);
    for (const auto& ball : {BallSpec::l1(), BallSpec::l2(), BallSpec::linf()}) {
        for (int rep = 0; rep < 200; ++rep) {
            Vector a(6), b(6);
            for (double& x : a) x = rng.next_gaussian();
            for (double& x : b) x = rng.next_gaussian();
            const double dist = ball_norm(sub(a, b), ball);
            Vector mid(6);
            for (std::size_t i = 0; i < 6; ++i) mid[i] = 0.5 * (a[i] + b[i]);
            const double ra = ball_norm(sub(a, mid), ball);
            const double rb = ball_norm(sub(b, mid), ball);
            // both halves measure exactly dist/2
            CHECK(ra == doctest::Approx(dist / 2).epsilon(1e-12));
            CHECK(rb == doctest::Approx(dist / 2).epsilon(1e-12));
            // away from the boundary the equivalence is exact
            const double beta_in = dist / 2 * 1.001;
            const double beta_out = dist / 2 * 0.999;
            CHECK(std::max(ra, rb) <= beta_in);
            CHECK(std::max(ra, rb) > beta_out);
        }
    }
}

TEST_CASE("distance matrix cache round trip") {
    RngStream rng(27, 0);
    const auto task = random_task(5, 4, rng);
    const auto dm = pairwise_distances(task, BallSpec::l2());
    const auto path = (std::filesystem::temp_directory_path() / "advt_dist.advd").string();
    save_distance_matrix(dm, path);
    const auto back = load_distance_matrix(path);
    CHECK(back.k == dm.k);
    CHECK(back.dim == dm.dim);
    CHECK(back.values == dm.values);
    std::filesystem::remove(path);
}
