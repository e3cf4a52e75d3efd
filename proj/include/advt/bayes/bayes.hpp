#pragma once
// Minimum expected loss of any learning rule for the Gaussian problem with
// prior mu ~ N(0, I/m), after n labeled samples. The posterior reduces the
// problem to a known-parameter instance with effective mean mu_hat of
// per-coordinate variance n/(m(m+n)); writing rho^2 = m(m+n)/n, the loss
// equals Pr[ alpha*(beta*rho, X) <= T*rho ] over (X, T) ~ N(0, I_{d+1}).
// Two Monte-Carlo estimators of the same number cross-validate each other;
// the comparison bound ignores the residual noise and keeps only the event
// that the posterior classes are adversarially indistinguishable.

#include <cstdint>
#include <optional>

#include "advt/numerics/ball.hpp"

namespace advt::bayes {

struct BayesSetup {
    std::size_t d = 1;
    double m = 1.0;         // prior precision, mu ~ N(0, I/m)
    std::uint64_t n = 1;    // training samples
    BallSpec ball = BallSpec::linf();
    double beta = 0.0;

    void validate() const;
};

double rho(double m, std::uint64_t n);

struct McEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

// Average of Q(alpha*(beta, mu_hat)) over posterior draws
// mu_hat ~ N(0, I/rho^2). Standard error from the sample deviation.
McEstimate bayes_loss_via_posterior(const BayesSetup& setup, std::uint64_t trials,
                                    std::uint64_t seed);

// Indicator estimate of Pr[ alpha*(beta*rho, X) <= T*rho ]; a draw with
// T < 0 can never be a member since alpha* >= 0. Binomial standard error.
McEstimate bayes_loss_via_membership(const BayesSetup& setup, std::uint64_t trials,
                                     std::uint64_t seed);

struct SchmidtBound {
    // Pr[X in beta*rho*B] for X ~ N(0, I_d): the probability that the
    // posterior classes are indistinguishable.
    McEstimate indistinguishable;
    // (1 - 2 Q(beta*rho))^d, available for the l-infinity ball.
    std::optional<double> closed_form;
    // Loss lower bound implied by the comparison argument: membership in
    // the noise-free set, which also requires T >= 0, so half the above.
    double loss_lower_bound() const noexcept { return 0.5 * indistinguishable.value; }
};

SchmidtBound schmidt_lower_bound(const BayesSetup& setup, std::uint64_t trials,
                                 std::uint64_t seed);

}  // namespace advt::bayes
