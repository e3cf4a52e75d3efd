#include <doctest.h>

#include <cmath>

#include "advt/gaussian/gaussian.hpp"
#include "advt/numerics/qfunc.hpp"
#include "advt/numerics/rng.hpp"
#include "oracles/erfc_oracle.hpp"

using namespace advt;
using namespace advt::gaussian;

namespace {

SpdMatrix random_spd(std::size_t d, RngStream& rng) {
    Vector g(d * d);
    for (double& x : g) x = rng.next_gaussian();
    Vector a(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) s += g[k * d + i] * g[k * d + j];
            a[i * d + j] = s / double(d);
        }
    for (std::size_t i = 0; i < d; ++i) a[i * d + i] += 0.5;
    return SpdMatrix(d, std::move(a));
}

Vector random_vec(std::size_t d, RngStream& rng, double scale = 1.0) {
    Vector v(d);
    for (double& x : v) x = scale * rng.next_gaussian();
    return v;
}

void check_certificate(const AlphaCertificate& cert, double tol) {
    REQUIRE_FALSE(cert.degenerate);
    for (double r : cert.residuals) CHECK(std::fabs(r) <= tol * (1.0 + std::fabs(cert.alpha)));
    CHECK(cert.duality_gap <= tol * (1.0 + std::fabs(cert.alpha)));
    // y + z = mu is structural
    CHECK(cert.alpha >= 0.0);
}

}  // namespace

TEST_CASE("matching-norm closed form") {
    // Sigma = I, mu = (3, 0), beta = 1 -> alpha = 2
    GaussianProblem p{Vector{3.0, 0.0}, SpdMatrix::identity(2),
                      BallSpec::mahalanobis(SpdMatrix::identity(2)), 1.0};
    const auto cert = alpha_star_matching_norm(p);
    CHECK(cert.alpha == doctest::Approx(2.0).epsilon(1e-14));
    check_certificate(cert, 1e-12);
    // w = Sigma^{-1} mu / ||mu||_Sigma
    CHECK(cert.w[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cert.w[1] == doctest::Approx(0.0).epsilon(1e-13));

    // beta = 0 -> alpha = ||mu||_Sigma
    p.beta = 0.0;
    CHECK(alpha_star_matching_norm(p).alpha == doctest::Approx(3.0).epsilon(1e-14));

    // beta = ||mu||_B -> alpha = 0, degenerate boundary
    p.beta = 3.0;
    const auto edge = alpha_star_matching_norm(p);
    CHECK(edge.alpha == 0.0);
    CHECK(edge.degenerate);

    // mu = 0 is flagged, not fabricated
    GaussianProblem zero{Vector{0.0, 0.0}, SpdMatrix::identity(2),
                         BallSpec::mahalanobis(SpdMatrix::identity(2)), 0.5};
    CHECK(alpha_star_matching_norm(zero).degenerate);
}

TEST_CASE("matching-norm closed form on a random ellipsoid") {
    RngStream rng(41, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 2 + rng.next_u64() % 19;
        auto sigma = random_spd(d, rng);
        const Vector mu = random_vec(d, rng, 2.0);
        const double mu_norm = sigma.inv_quad_norm(mu);
        const double beta = 0.9 * mu_norm * rng.next_uniform();
        GaussianProblem p{mu, sigma, BallSpec::mahalanobis(sigma), beta};
        const auto cert = alpha_star_matching_norm(p);
        CHECK(cert.alpha == doctest::Approx(mu_norm - beta).epsilon(1e-12));
        check_certificate(cert, 1e-12);
    }
}

TEST_CASE("l-infinity closed form") {
    GaussianProblem p{Vector{2.0, 0.5}, SpdMatrix::identity(2), BallSpec::linf(), 1.0};
    const auto cert = alpha_star_linf_explicit(p);
    CHECK(cert.z[0] == 1.0);
    CHECK(cert.z[1] == 0.5);
    CHECK(cert.y[0] == 1.0);
    CHECK(cert.y[1] == 0.0);
    CHECK(cert.alpha == doctest::Approx(1.0).epsilon(1e-15));
    check_certificate(cert, 1e-12);

    // beta >= ||mu||_inf erases every coordinate
    p.beta = 2.0;
    const auto erased = alpha_star_linf_explicit(p);
    CHECK(erased.alpha == 0.0);
    CHECK(erased.degenerate);

    // beta = 0 keeps the full mean
    p.beta = 0.0;
    CHECK(alpha_star_linf_explicit(p).alpha ==
          doctest::Approx(std::sqrt(4.25)).epsilon(1e-15));

    // negative coordinates clip symmetrically
    GaussianProblem neg{Vector{-2.0, 0.5}, SpdMatrix::identity(2), BallSpec::linf(), 1.0};
    const auto nc = alpha_star_linf_explicit(neg);
    CHECK(nc.z[0] == -1.0);
    CHECK(nc.alpha == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("generic solver agrees with the l-infinity closed form") {
    RngStream rng(42, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + rng.next_u64() % 49;
        const Vector mu = random_vec(d, rng);
        GaussianProblem p{mu, SpdMatrix::identity(d), BallSpec::linf(),
                          0.9 * linf_norm(mu) * rng.next_uniform()};
        const auto exact = alpha_star_linf_explicit(p);
        const auto generic = alpha_star_generic(p, 1e-8);
        CHECK(generic.converged);
        CHECK(std::fabs(generic.alpha - exact.alpha) <= 1e-6);
    }
}

TEST_CASE("generic solver agrees with the matching-norm closed form") {
    RngStream rng(43, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + rng.next_u64() % 19;
        auto sigma = random_spd(d, rng);
        const Vector mu = random_vec(d, rng, 2.0);
        const double beta = 0.9 * sigma.inv_quad_norm(mu) * rng.next_uniform();
        GaussianProblem p{mu, sigma, BallSpec::mahalanobis(sigma), beta};
        const auto exact = alpha_star_matching_norm(p);
        const auto generic = alpha_star_generic(p, 1e-10);
        CHECK(generic.converged);
        CHECK(std::fabs(generic.alpha - exact.alpha) <= 1e-8);
        check_certificate(generic, 1e-9);
    }
}

TEST_CASE("generic solver endpoints are exact") {
    RngStream rng(44, 0);
    const std::size_t d = 8;
    auto sigma = random_spd(d, rng);
    const Vector mu = random_vec(d, rng, 2.0);
    for (const auto& ball : {BallSpec::l1(), BallSpec::l2(), BallSpec::linf()}) {
        GaussianProblem p{mu, sigma, ball, 0.0};
        CHECK(alpha_star_generic(p).alpha == sigma.inv_quad_norm(mu));
        p.beta = ball_norm(mu, ball);
        const auto edge = alpha_star_generic(p);
        CHECK(edge.alpha <= 1e-10);
        CHECK(edge.degenerate);
    }
}

TEST_CASE("coupling upper bound meets the classifier lower bound") {
    RngStream rng(45, 0);
    const BallSpec balls[] = {BallSpec::l1(), BallSpec::l2(), BallSpec::linf()};
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + rng.next_u64() % 19;
        auto sigma = random_spd(d, rng);
        const Vector mu = random_vec(d, rng, 1.5);
        const BallSpec& ball = balls[rep % 3];
        const double beta = 0.9 * ball_norm(mu, ball) * rng.next_uniform();
        GaussianProblem p{mu, sigma, ball, beta};
        const auto cert = alpha_star_generic(p, 1e-8);
        REQUIRE(cert.converged);
        check_certificate(cert, 1e-6);

        const double upper = translate_and_pair_upper_bound(p, cert.z);
        const double lower = 1.0 - 2.0 * linear_classifier_adv_loss(p, cert.w);
        const double reference = 1.0 - 2.0 * q_function(cert.alpha);
        CHECK(upper - lower <= 1e-6);
        CHECK(std::fabs(upper - reference) <= 1e-6);
        CHECK(std::fabs(lower - reference) <= 1e-6);
    }
}

TEST_CASE("optimal_adv_loss values") {
    CHECK(optimal_adv_loss(0.0) == 0.5);
    CHECK(optimal_adv_loss(40.0) < 1e-300);
    CHECK(optimal_adv_loss(1.0) ==
          doctest::Approx(advt::test::q_reference(1.0)).epsilon(1e-13));
    CHECK_THROWS_AS(optimal_adv_loss(-0.1), std::invalid_argument);
}

TEST_CASE("total variation between symmetric gaussians") {
    const auto eye = SpdMatrix::identity(3);
    CHECK(tv_gaussians_symmetric(Vector{0, 0, 0}, eye) == 0.0);
    CHECK(tv_gaussians_symmetric(Vector{1, 0, 0}, eye) ==
          doctest::Approx(1.0 - 2.0 * advt::test::q_reference(1.0)).epsilon(1e-13));
    CHECK(tv_gaussians_symmetric(Vector{50, 0, 0}, eye) == doctest::Approx(1.0));
}

TEST_CASE("translate-and-pair upper bound") {
    RngStream rng(46, 0);
    const std::size_t d = 6;
    const Vector mu = random_vec(d, rng, 1.5);
    const auto eye = SpdMatrix::identity(d);
    GaussianProblem p{mu, eye, BallSpec::l2(), 0.6 * l2_norm(mu)};

    // z = 0 gives the no-adversary total variation
    CHECK(translate_and_pair_upper_bound(p, Vector(d, 0.0)) ==
          doctest::Approx(1.0 - 2.0 * q_function(l2_norm(mu))).epsilon(1e-14));

    const auto cert = alpha_star(p);
    CHECK(translate_and_pair_upper_bound(p, cert.z) ==
          doctest::Approx(1.0 - 2.0 * q_function(cert.alpha)).epsilon(1e-12));

    // any feasible z is no better than the optimum
    const double best = 1.0 - 2.0 * q_function(cert.alpha);
    for (int rep = 0; rep < 200; ++rep) {
        const Vector z = project_ball(random_vec(d, rng, 2.0), p.ball, p.beta);
        CHECK(translate_and_pair_upper_bound(p, z) >= best - 1e-9);
    }

    // infeasible z is rejected
    Vector far(d, 0.0);
    far[0] = p.beta * 10.0;
    CHECK_THROWS_AS(translate_and_pair_upper_bound(p, far), std::invalid_argument);
}

TEST_CASE("linear classifier loss") {
    RngStream rng(47, 0);
    const std::size_t d = 5;
    auto sigma = random_spd(d, rng);
    const Vector mu = random_vec(d, rng, 1.5);

    // beta = 0 with w = Sigma^{-1} mu gives the classical error Q(||mu||_Sigma)
    GaussianProblem benign{mu, sigma, BallSpec::l2(), 0.0};
    const Vector w_lda = sigma.solve(mu);
    CHECK(linear_classifier_adv_loss(benign, w_lda) ==
          doctest::Approx(q_function(sigma.inv_quad_norm(mu))).epsilon(1e-12));

    // certificate w attains Q(alpha*), every other w does no better
    GaussianProblem p{mu, sigma, BallSpec::l2(), 0.5 * l2_norm(mu)};
    const auto cert = alpha_star_generic(p, 1e-9);
    REQUIRE(cert.converged);
    const double at_cert = linear_classifier_adv_loss(p, cert.w);
    CHECK(at_cert == doctest::Approx(q_function(cert.alpha)).epsilon(1e-8));
    for (int rep = 0; rep < 200; ++rep) {
        const Vector w = random_vec(d, rng);
        CHECK(linear_classifier_adv_loss(p, w) >= q_function(cert.alpha) - 1e-8);
    }
    CHECK_THROWS_AS(linear_classifier_adv_loss(p, Vector(d, 0.0)), std::invalid_argument);
}

TEST_CASE("alpha* is nonincreasing and convex in beta, and scale equivariant") {
    RngStream rng(48, 0);
    const std::size_t d = 10;
    const Vector mu = random_vec(d, rng);
    const auto eye = SpdMatrix::identity(d);
    for (const auto& ball : {BallSpec::l1(), BallSpec::l2(), BallSpec::linf()}) {
        const double reach = ball_norm(mu, ball);
        std::vector<double> alphas;
        for (int i = 0; i <= 20; ++i) {
            GaussianProblem p{mu, eye, ball, reach * i / 20.0};
            alphas.push_back(alpha_star(p).alpha);
        }
        for (std::size_t i = 1; i < alphas.size(); ++i)
            CHECK(alphas[i] <= alphas[i - 1] + 1e-12);
        for (std::size_t i = 1; i + 1 < alphas.size(); ++i) {
            CHECK(alphas[i + 1] - 2 * alphas[i] + alphas[i - 1] >= -1e-8);
        }
        // endpoints
        CHECK(alphas.front() == eye.inv_quad_norm(mu));
        CHECK(alphas.back() <= 1e-12);

        // alpha*(c beta, c mu) = c alpha*(beta, mu)
        const double c = 2.75;
        GaussianProblem p1{mu, eye, ball, reach * 0.4};
        GaussianProblem pc{scaled(mu, c), eye, ball, c * reach * 0.4};
        CHECK(alpha_star(pc).alpha ==
              doctest::Approx(c * alpha_star(p1).alpha).epsilon(1e-8));
    }
}

TEST_CASE("dispatcher picks closed forms and the identity-sigma fast path") {
    RngStream rng(49, 0);
    const Vector mu = random_vec(12, rng);
    const auto eye = SpdMatrix::identity(12);
    for (const auto& ball : {BallSpec::l1(), BallSpec::l2(), BallSpec::linf()}) {
        const double beta = 0.5 * ball_norm(mu, ball);
        GaussianProblem p{mu, eye, ball, beta};
        const auto cert = alpha_star(p);
        CHECK(cert.alpha ==
              doctest::Approx(alpha_star_identity_sigma(mu, ball, beta)).epsilon(1e-12));
        check_certificate(cert, 1e-9);
    }
}
