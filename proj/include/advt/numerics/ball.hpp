#pragma once
// Norm balls used as adversary constraint sets: closed, convex,
// origin-symmetric. The Mahalanobis kind is the ellipsoid
// {z : z' S^{-1} z <= 1} for an SPD matrix S.

#include <optional>
#include <span>
#include <string>

#include "advt/numerics/spd.hpp"
#include "advt/numerics/vec.hpp"

namespace advt {

enum class BallKind { L1, L2, Linf, Mahalanobis };

struct BallSpec {
    BallKind kind = BallKind::L2;
    std::optional<SpdMatrix> factor;  // Mahalanobis only

    static BallSpec l1() { return {BallKind::L1, std::nullopt}; }
    static BallSpec l2() { return {BallKind::L2, std::nullopt}; }
    static BallSpec linf() { return {BallKind::Linf, std::nullopt}; }
    static BallSpec mahalanobis(SpdMatrix s) { return {BallKind::Mahalanobis, std::move(s)}; }
};

// Parse "l1" / "l2" / "linf"; throws std::invalid_argument otherwise.
BallSpec parse_ball(const std::string& name);
const char* ball_name(BallKind kind) noexcept;

// ||z||_B = inf { t >= 0 : z in t*B }
double ball_norm(std::span<const double> z, const BallSpec& ball);

// Norm dual to ||.||_B: l1 <-> linf, l2 self-dual, ellipsoid(S) -> sqrt(w'Sw).
double dual_norm(std::span<const double> w, const BallSpec& ball);

// argmax_{z in beta*B} w'z; the attained value is beta * dual_norm(w).
// Returns the origin for w = 0.
Vector support_point(std::span<const double> w, const BallSpec& ball, double beta);

// Euclidean projection onto beta*B.
Vector project_ball(std::span<const double> x, const BallSpec& ball, double beta);

}  // namespace advt
