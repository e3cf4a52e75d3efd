#pragma once
// Sweep drivers behind the command-line front end. Each command writes one
// CSV file; progress goes to stderr only.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advt/numerics/ball.hpp"

namespace advt::cli {

// "a:b:s" (inclusive of both endpoints up to float slack) or a comma list.
// The grid must be nonempty, strictly increasing and nonnegative.
std::vector<double> parse_beta_grid(const std::string& text);

struct EmpiricalConfig {
    std::string format;  // idx | cifar10 | csv
    std::vector<std::string> images;
    std::string labels;  // idx only
    int class_a = 0;
    int class_b = 0;
    std::size_t k = 0;  // 0 = use all available (balanced to the smaller class)
    std::string norm = "l2";
    std::vector<double> betas;
    std::uint64_t seed = 0;
    std::string out;
    std::string cache;  // optional distance-matrix cache path
    unsigned threads = 1;
};

// CSV columns: beta,matching_size,transport_cost,min_loss
void run_empirical(const EmpiricalConfig& cfg);

struct GaussianConfig {
    std::size_t d = 0;
    std::vector<double> mu_inline;
    std::string mu_file;
    std::optional<std::uint64_t> mu_seed;  // sample mu ~ N(0, I) entries, then scale
    double mu_scale = 1.0;
    std::string sigma_file;  // dense d x d CSV; identity when empty
    std::string norm = "linf";
    std::vector<double> betas;
    double tol = 1e-8;
    int max_iters = 200000;
    std::string out;
    unsigned threads = 1;
};

// CSV columns: beta,alpha_star,optimal_loss,transport_cost,duality_gap
// Returns the number of rows whose solve did not converge.
std::size_t run_gaussian(const GaussianConfig& cfg);

struct BayesConfig {
    std::size_t d = 1;
    double m = 1.0;
    std::vector<std::uint64_t> ns;
    std::string norm = "linf";
    double beta = 0.0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::string out;
    unsigned threads = 1;
};

// CSV columns: n,rho,bayes_loss,bayes_se,schmidt_bound,schmidt_se
void run_bayes(const BayesConfig& cfg);

}  // namespace advt::cli
