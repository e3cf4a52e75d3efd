#include "advt/numerics/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace advt {

namespace {

const SpdMatrix& factor_of(const BallSpec& ball) {
    if (!ball.factor) throw std::invalid_argument("Mahalanobis ball has no factor matrix");
    return *ball.factor;
}

// Projection of |x| onto the simplex {v >= 0, sum v = beta}, signs restored.
// Sort-and-threshold; O(d log d).
Vector project_l1(std::span<const double> x, double beta) {
    Vector abs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) abs[i] = std::fabs(x[i]);
    Vector sorted = abs;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumsum = 0.0;
    double tau = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cumsum += sorted[i];
        const double t = (cumsum - beta) / static_cast<double>(i + 1);
        if (i + 1 == sorted.size() || sorted[i + 1] <= t) {
            tau = t;
            break;
        }
    }
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double m = std::max(abs[i] - tau, 0.0);
        out[i] = std::copysign(m, x[i]);
    }
    return out;
}

// Euclidean projection onto {z : z' S^{-1} z <= beta^2}. With S = V diag(s) V',
// the KKT point is z = (I + lam S^{-1})^{-1} x; Newton on the multiplier.
Vector project_ellipsoid(std::span<const double> x, const SpdMatrix& s, double beta) {
    const auto& eig = s.eigen();
    const std::size_t d = s.dim();
    // coords of x in the eigenbasis
    Vector c(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < d; ++i) acc += eig.vectors[i * d + j] * x[i];
        c[j] = acc;
    }
    auto norm_sq_at = [&](double lam) {
        double g = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double r = eig.values[j] + lam;
            g += c[j] * c[j] * eig.values[j] / (r * r);
        }
        return g;
    };
    const double beta_sq = beta * beta;
    double lam = 0.0;
    if (norm_sq_at(0.0) > beta_sq) {
        // g is decreasing and convex in lam, so Newton from 0 converges
        // monotonically; bisection safeguard kept anyway.
        double lo = 0.0;
        double hi = 1.0;
        while (norm_sq_at(hi) > beta_sq) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double g = norm_sq_at(lam) - beta_sq;
            if (std::fabs(g) <= 1e-12 * beta_sq) break;
            double dg = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double r = eig.values[j] + lam;
                dg += -2.0 * c[j] * c[j] * eig.values[j] / (r * r * r);
            }
            double next = lam - g / dg;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            (g > 0.0 ? lo : hi) = lam;
            lam = next;
        }
    }
    Vector zc(d);
    for (std::size_t j = 0; j < d; ++j) zc[j] = c[j] * eig.values[j] / (eig.values[j] + lam);
    Vector out(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += eig.vectors[i * d + j] * zc[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace

BallSpec parse_ball(const std::string& name) {
    if (name == "l1") return BallSpec::l1();
    if (name == "l2") return BallSpec::l2();
    if (name == "linf") return BallSpec::linf();
    throw std::invalid_argument("unknown norm '" + name + "' (expected l1, l2 or linf)");
}

const char* ball_name(BallKind kind) noexcept {
    switch (kind) {
        case BallKind::L1: return "l1";
        case BallKind::L2: return "l2";
        case BallKind::Linf: return "linf";
        case BallKind::Mahalanobis: return "mahalanobis";
    }
    return "?";
}

double ball_norm(std::span<const double> z, const BallSpec& ball) {
    switch (ball.kind) {
        case BallKind::L1: return l1_norm(z);
        case BallKind::L2: return l2_norm(z);
        case BallKind::Linf: return linf_norm(z);
        case BallKind::Mahalanobis: return factor_of(ball).inv_quad_norm(z);
    }
    return 0.0;
}

double dual_norm(std::span<const double> w, const BallSpec& ball) {
    switch (ball.kind) {
        case BallKind::L1: return linf_norm(w);
        case BallKind::L2: return l2_norm(w);
        case BallKind::Linf: return l1_norm(w);
        case BallKind::Mahalanobis: return factor_of(ball).quad_norm(w);
    }
    return 0.0;
}

Vector support_point(std::span<const double> w, const BallSpec& ball, double beta) {
    if (beta < 0.0) throw std::invalid_argument("support_point: beta must be >= 0");
    const std::size_t d = w.size();
    Vector out(d, 0.0);
    switch (ball.kind) {
        case BallKind::Linf:
            for (std::size_t i = 0; i < d; ++i) {
                out[i] = w[i] > 0.0 ? beta : (w[i] < 0.0 ? -beta : 0.0);
            }
            break;
        case BallKind::L2: {
            const double n = l2_norm(w);
            if (n > 0.0)
                for (std::size_t i = 0; i < d; ++i) out[i] = beta * w[i] / n;
            break;
        }
        case BallKind::L1: {
            std::size_t best = 0;
            double m = -1.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double a = std::fabs(w[i]);
                if (a > m) {
                    m = a;
                    best = i;
                }
            }
            if (m > 0.0) out[best] = std::copysign(beta, w[best]);
            break;
        }
        case BallKind::Mahalanobis: {
            const auto& s = factor_of(ball);
            const double dn = s.quad_norm(w);
            if (dn > 0.0) {
                Vector sw = s.apply(w);
                for (std::size_t i = 0; i < d; ++i) out[i] = beta * sw[i] / dn;
            }
            break;
        }
    }
    return out;
}

Vector project_ball(std::span<const double> x, const BallSpec& ball, double beta) {
    if (beta < 0.0) throw std::invalid_argument("project_ball: beta must be >= 0");
    Vector out(x.begin(), x.end());
    switch (ball.kind) {
        case BallKind::Linf:
            for (double& v : out) v = std::clamp(v, -beta, beta);
            return out;
        case BallKind::L2: {
            const double n = l2_norm(x);
            if (n <= beta) return out;
            const double c = beta / n;
            for (double& v : out) v *= c;
            return out;
        }
        case BallKind::L1:
            if (l1_norm(x) <= beta) return out;
            return project_l1(x, beta);
        case BallKind::Mahalanobis: {
            const auto& s = factor_of(ball);
            if (s.inv_quad_norm(x) <= beta) return out;
            if (beta == 0.0) return Vector(x.size(), 0.0);
            return project_ellipsoid(x, s, beta);
        }
    }
    return out;
}

}  // namespace advt
