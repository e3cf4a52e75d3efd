#include "advt/bayes/bayes.hpp"

#include <cmath>
#include <stdexcept>

#include "advt/gaussian/gaussian.hpp"
#include "advt/numerics/qfunc.hpp"
#include "advt/numerics/rng.hpp"

namespace advt::bayes {

void BayesSetup::validate() const {
    if (d < 1) throw std::invalid_argument("bayes setup: d must be >= 1");
    if (!(m > 0.0)) throw std::invalid_argument("bayes setup: m must be > 0");
    if (n < 1) throw std::invalid_argument("bayes setup: n must be >= 1");
    if (beta < 0.0) throw std::invalid_argument("bayes setup: beta must be >= 0");
}

double rho(double m, std::uint64_t n) {
    if (!(m > 0.0)) throw std::invalid_argument("rho: m must be > 0");
    if (n < 1) throw std::invalid_argument("rho: n must be >= 1");
    const double nd = static_cast<double>(n);
    return std::sqrt(m * (m + nd) / nd);
}

namespace {

// Every trial owns its stream, so estimates do not depend on how trials
// are chunked across workers.
constexpr std::uint64_t kPosteriorStreamBase = 1ull << 32;
constexpr std::uint64_t kMembershipStreamBase = 2ull << 32;
constexpr std::uint64_t kSchmidtStreamBase = 3ull << 32;

}  // namespace

McEstimate bayes_loss_via_posterior(const BayesSetup& setup, std::uint64_t trials,
                                    std::uint64_t seed) {
    setup.validate();
    const double r = rho(setup.m, setup.n);
    const double posterior_std = 1.0 / r;
    Vector mu_hat(setup.d);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RngStream rng(seed, kPosteriorStreamBase + t);
        for (double& v : mu_hat) v = posterior_std * rng.next_gaussian();
        const double alpha =
            gaussian::alpha_star_identity_sigma(mu_hat, setup.ball, setup.beta);
        const double loss = q_function(alpha);
        sum += loss;
        sum_sq += loss * loss;
    }
    McEstimate e;
    e.trials = trials;
    e.seed = seed;
    e.value = sum / static_cast<double>(trials);
    const double var =
        std::max(sum_sq / static_cast<double>(trials) - e.value * e.value, 0.0);
    e.standard_error = std::sqrt(var / static_cast<double>(trials));
    return e;
}

McEstimate bayes_loss_via_membership(const BayesSetup& setup, std::uint64_t trials,
                                     std::uint64_t seed) {
    setup.validate();
    const double r = rho(setup.m, setup.n);
    Vector x(setup.d);
    std::uint64_t members = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RngStream rng(seed, kMembershipStreamBase + t);
        for (double& v : x) v = rng.next_gaussian();
        const double tt = rng.next_gaussian();
        const double alpha =
            gaussian::alpha_star_identity_sigma(x, setup.ball, setup.beta * r);
        if (alpha <= tt * r) ++members;
    }
    McEstimate e;
    e.trials = trials;
    e.seed = seed;
    e.value = static_cast<double>(members) / static_cast<double>(trials);
    e.standard_error =
        std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
    return e;
}

SchmidtBound schmidt_lower_bound(const BayesSetup& setup, std::uint64_t trials,
                                 std::uint64_t seed) {
    setup.validate();
    const double r = rho(setup.m, setup.n);
    const double radius = setup.beta * r;
    Vector x(setup.d);
    std::uint64_t inside = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RngStream rng(seed, kSchmidtStreamBase + t);
        for (double& v : x) v = rng.next_gaussian();
        if (ball_norm(x, setup.ball) <= radius) ++inside;
    }
    SchmidtBound b;
    b.indistinguishable.trials = trials;
    b.indistinguishable.seed = seed;
    b.indistinguishable.value = static_cast<double>(inside) / static_cast<double>(trials);
    b.indistinguishable.standard_error = std::sqrt(
        b.indistinguishable.value * (1.0 - b.indistinguishable.value) /
        static_cast<double>(trials));
    if (setup.ball.kind == BallKind::Linf) {
        b.closed_form = std::pow(1.0 - 2.0 * q_function(radius),
                                 static_cast<double>(setup.d));
    }
    return b;
}

}  // namespace advt::bayes
