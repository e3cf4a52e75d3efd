#include "advt/gaussian/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "advt/numerics/qfunc.hpp"

namespace advt::gaussian {

namespace {

// Fill w, gamma, residuals and the duality gap for a primal point z.
// alpha is set to ||y||_Sigma; w = Sigma^{-1} y / alpha unless y ~ 0,
// which marks the certificate degenerate.
void finish_certificate(const GaussianProblem& p, AlphaCertificate& cert) {
    const std::size_t d = p.mu.size();
    cert.y = sub(p.mu, cert.z);
    cert.alpha = p.sigma.inv_quad_norm(cert.y);

    const double mu_scale = p.sigma.inv_quad_norm(p.mu);
    if (cert.alpha <= 1e-12 * std::max(1.0, mu_scale)) {
        cert.degenerate = true;
        cert.w.assign(d, 0.0);
        cert.gamma = 0.0;
        cert.residuals = {cert.alpha, ball_norm(cert.z, p.ball) - p.beta, 0, 0, 0, 0};
        cert.duality_gap = cert.alpha;
        return;
    }
    Vector w = p.sigma.solve(cert.y);
    for (double& v : w) v /= cert.alpha;
    cert.w = std::move(w);
    cert.gamma = dual_norm(cert.w, p.ball);

    const double wy = dot(cert.w, cert.y);
    const double wz = dot(cert.w, cert.z);
    cert.residuals = {
        0.0,  // alpha is defined as ||y||_Sigma
        ball_norm(cert.z, p.ball) - p.beta,
        p.sigma.quad_norm(cert.w) - 1.0,
        0.0,  // gamma is defined as ||w||_{B*}
        wy - cert.alpha,
        wz - p.beta * cert.gamma,
    };
    cert.duality_gap = std::fabs(cert.alpha - (dot(cert.w, p.mu) - p.beta * cert.gamma));
}

void require_dim(const GaussianProblem& p) {
    if (p.mu.size() != p.sigma.dim())
        throw std::invalid_argument("gaussian problem: mu/sigma dimension mismatch");
    if (p.beta < 0.0) throw std::invalid_argument("gaussian problem: beta must be >= 0");
}

bool same_matrix(const SpdMatrix& a, const SpdMatrix& b) {
    if (a.dim() != b.dim()) return false;
    double scale = 0.0;
    for (double x : a.dense()) scale = std::max(scale, std::fabs(x));
    for (std::size_t i = 0; i < a.dense().size(); ++i) {
        if (std::fabs(a.dense()[i] - b.dense()[i]) > 1e-10 * scale) return false;
    }
    return true;
}

}  // namespace

double AlphaCertificate::max_residual() const noexcept {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, std::fabs(r));
    return m;
}

AlphaCertificate alpha_star_matching_norm(const GaussianProblem& p) {
    require_dim(p);
    if (p.ball.kind != BallKind::Mahalanobis || !same_matrix(*p.ball.factor, p.sigma))
        throw std::invalid_argument("matching-norm form requires ball = Sigma ellipsoid");
    const double mu_norm = p.sigma.inv_quad_norm(p.mu);
    AlphaCertificate cert;
    if (mu_norm == 0.0) {
        cert.degenerate = true;
        cert.z.assign(p.mu.size(), 0.0);
        cert.y.assign(p.mu.size(), 0.0);
        cert.w.assign(p.mu.size(), 0.0);
        return cert;
    }
    const double scale = std::min(p.beta / mu_norm, 1.0);
    cert.z = scaled(p.mu, scale);
    finish_certificate(p, cert);
    return cert;
}

AlphaCertificate alpha_star_linf_explicit(const GaussianProblem& p) {
    require_dim(p);
    if (p.ball.kind != BallKind::Linf)
        throw std::invalid_argument("explicit form requires the l-infinity ball");
    if (!p.sigma.is_identity())
        throw std::invalid_argument("explicit form requires Sigma = I");
    AlphaCertificate cert;
    cert.z.resize(p.mu.size());
    for (std::size_t i = 0; i < p.mu.size(); ++i) {
        cert.z[i] = std::copysign(std::min(std::fabs(p.mu[i]), p.beta), p.mu[i]);
    }
    finish_certificate(p, cert);
    return cert;
}

AlphaCertificate alpha_star_generic(const GaussianProblem& p, double tol, int max_iters) {
    require_dim(p);
    const std::size_t d = p.mu.size();

    const double lambda_max_inv = p.sigma.inv_largest_eigenvalue();
    const double step = 1.0 / (2.0 * lambda_max_inv);

    AlphaCertificate cert;
    cert.z = project_ball(p.mu, p.ball, p.beta);  // warm start; exact when Sigma = I
    Vector z = cert.z;
    int it = 0;
    for (; it < max_iters; ++it) {
        cert.z = z;
        finish_certificate(p, cert);
        if (cert.degenerate ||
            cert.max_residual() <= tol * (1.0 + std::fabs(cert.alpha))) {
            cert.converged = true;
            cert.iterations = it;
            return cert;
        }
        // gradient of (mu - z)' Sigma^{-1} (mu - z) is -2 Sigma^{-1} (mu - z)
        Vector grad = p.sigma.solve(cert.y);
        for (std::size_t i = 0; i < d; ++i) z[i] += 2.0 * step * grad[i];
        z = project_ball(z, p.ball, p.beta);
    }
    cert.z = z;
    finish_certificate(p, cert);
    cert.converged =
        cert.degenerate || cert.max_residual() <= tol * (1.0 + std::fabs(cert.alpha));
    cert.iterations = it;
    return cert;
}

AlphaCertificate alpha_star(const GaussianProblem& p, double tol, int max_iters) {
    require_dim(p);
    if (p.ball.kind == BallKind::Mahalanobis && same_matrix(*p.ball.factor, p.sigma))
        return alpha_star_matching_norm(p);
    if (p.ball.kind == BallKind::Linf && p.sigma.is_identity())
        return alpha_star_linf_explicit(p);
    if (p.sigma.is_identity()) {
        // one exact projected step: the program is the Euclidean projection
        AlphaCertificate cert;
        cert.z = project_ball(p.mu, p.ball, p.beta);
        finish_certificate(p, cert);
        cert.iterations = 1;
        return cert;
    }
    return alpha_star_generic(p, tol, max_iters);
}

double alpha_star_identity_sigma(std::span<const double> mu, const BallSpec& ball,
                                 double beta) {
    const Vector z = project_ball(mu, ball, beta);
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double r = mu[i] - z[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

double optimal_adv_loss(double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("optimal_adv_loss: alpha must be >= 0");
    return q_function(alpha);
}

double tv_gaussians_symmetric(std::span<const double> mu_eff, const SpdMatrix& sigma) {
    return 1.0 - 2.0 * q_function(sigma.inv_quad_norm(mu_eff));
}

double translate_and_pair_upper_bound(const GaussianProblem& p,
                                      std::span<const double> z) {
    require_dim(p);
    const double zn = ball_norm(z, p.ball);
    if (zn > p.beta * (1.0 + 1e-9) + 1e-15)
        throw std::invalid_argument("translate_and_pair_upper_bound: z outside beta*B");
    return tv_gaussians_symmetric(sub(p.mu, z), p.sigma);
}

double linear_classifier_adv_loss(const GaussianProblem& p, std::span<const double> w) {
    require_dim(p);
    const double sigma_dual = p.sigma.quad_norm(w);
    if (sigma_dual == 0.0)
        throw std::invalid_argument("linear_classifier_adv_loss: w must be nonzero");
    const double margin = (p.beta * dual_norm(w, p.ball) - dot(w, p.mu)) / sigma_dual;
    return 1.0 - q_function(margin);
}

}  // namespace advt::gaussian
