#pragma once
// One-dimensional quadrature oracles for the Bayes estimators (d = 1).

namespace advt::test {

// E_{u ~ N(0, 1/rho^2)} [ Q(max(|u| - beta, 0)) ]: the exact d = 1
// posterior-average loss for any of the interval balls.
double bayes_loss_1d(double rho, double beta);

// Pr[ |X| <= T * rho, T >= 0 ] for (X, T) ~ N(0, I_2): the exact d = 1
// membership probability at beta = 0.
double membership_beta0_1d(double rho);

}  // namespace advt::test
