#pragma once
// Analytic engine for symmetric Gaussian classes N(+mu, Sigma) vs
// N(-mu, Sigma) under an adversary confined to beta*B. The optimal
// adversarial 0-1 loss is Q(alpha*) where alpha* solves
//
//   min ||mu - z||_Sigma   s.t.  ||z||_B <= beta
//
// Certificates carry the primal pair (z, y = mu - z) and the dual vector
// w with the six complementary-slackness identities; matching upper
// (translate-and-pair coupling) and lower (linear classifier) bounds on
// the transport cost both evaluate to 1 - 2 Q(alpha*) at the certificate.

#include <array>
#include <optional>

#include "advt/numerics/ball.hpp"
#include "advt/numerics/spd.hpp"
#include "advt/numerics/vec.hpp"

namespace advt::gaussian {

struct GaussianProblem {
    Vector mu;
    SpdMatrix sigma;
    BallSpec ball;
    double beta = 0.0;
};

struct AlphaCertificate {
    double alpha = 0.0;
    Vector z;  // adversarial shift, ||z||_B = beta when not degenerate
    Vector y;  // mu - z
    Vector w;  // dual direction, ||w||_{Sigma*} = 1
    double gamma = 0.0;  // ||w||_{B*}

    // Signed residuals of the six certificate identities, in order:
    // ||y||_Sigma - alpha, ||z||_B - beta, ||w||_{Sigma*} - 1,
    // ||w||_{B*} - gamma, w'y - alpha, w'z - beta*gamma.
    std::array<double, 6> residuals{};
    double duality_gap = 0.0;  // |alpha - (w'mu - beta*gamma)|

    bool degenerate = false;  // y = 0 (beta >= ||mu||_B); w is undefined
    bool converged = true;
    int iterations = 0;

    double max_residual() const noexcept;
};

// Closed form when B is the Sigma-ellipsoid itself: alpha* = ||mu||_Sigma - beta
// (clamped at 0), z = beta * mu / ||mu||_Sigma, w = Sigma^{-1} mu / ||mu||_Sigma.
// Requires ball.kind == Mahalanobis with the same matrix as sigma.
AlphaCertificate alpha_star_matching_norm(const GaussianProblem& p);

// Closed form for Sigma = I and the l-infinity ball: each coordinate of mu
// is clipped toward zero by beta, z_i = sign(mu_i) * min(|mu_i|, beta).
AlphaCertificate alpha_star_linf_explicit(const GaussianProblem& p);

// Projected gradient on ||mu - z||_Sigma^2 over beta*B, step 1/L with
// L = 2 * lambda_max(Sigma^{-1}) from power iteration. Stops when every
// certificate residual is within tol * (1 + alpha); non-convergence is
// reported on the certificate, never thrown.
AlphaCertificate alpha_star_generic(const GaussianProblem& p, double tol = 1e-8,
                                    int max_iters = 200000);

// Dispatch: closed forms where they apply, otherwise the generic solver.
AlphaCertificate alpha_star(const GaussianProblem& p, double tol = 1e-8,
                            int max_iters = 200000);

// For Sigma = I the program is a Euclidean projection: alpha* is the
// l2 distance from mu to beta*B. Exact (up to the projection tolerance)
// and cheap; the Bayes engine leans on this.
double alpha_star_identity_sigma(std::span<const double> mu, const BallSpec& ball,
                                 double beta);

// Q(alpha): the optimal adversarial loss. The associated transport cost is
// 1 - 2 * loss.
double optimal_adv_loss(double alpha);

// Total variation between N(mu_eff, Sigma) and N(-mu_eff, Sigma):
// 1 - 2 Q(||mu_eff||_Sigma).
double tv_gaussians_symmetric(std::span<const double> mu_eff, const SpdMatrix& sigma);

// Transport-cost upper bound from the coupling that translates class +1 by
// -z and class -1 by +z, then pairs in place: 1 - 2 Q(||mu - z||_Sigma).
// Throws if z is infeasible (||z||_B > beta up to 1e-9 slack).
double translate_and_pair_upper_bound(const GaussianProblem& p, std::span<const double> z);

// Adversarial 0-1 loss of the linear classifier sign(w'x):
// 1 - Q((beta ||w||_{B*} - w'mu) / ||w||_{Sigma*}). Throws for w = 0.
// 1 - 2 * loss lower-bounds the transport cost.
double linear_classifier_adv_loss(const GaussianProblem& p, std::span<const double> w);

}  // namespace advt::gaussian
