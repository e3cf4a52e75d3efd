// advtransport: lower bounds on adversarial 0-1 loss via optimal transport.
//
//   empirical  bipartite-matching bound on a two-class dataset over a beta grid
//   gaussian   analytic alpha*/loss curve for symmetric Gaussian classes
//   bayes      minimum learnable loss vs sample count, with the comparison bound
//
// All commands write CSV to --out; stdout stays empty and progress goes to
// stderr. Exit codes: 0 ok, 1 data error, 2 usage error, 3 solver
// non-convergence in at least one row (rows are still written).

#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "advt/cli/commands.hpp"
#include "advt/data/dataset.hpp"
#include "advt/parallel.hpp"

int main(int argc, char** argv) {
    CLI::App app{"adversarial robustness bounds via optimal transport"};
    app.require_subcommand(1);

    advt::cli::EmpiricalConfig emp;
    std::string emp_betas;
    auto* cmd_emp = app.add_subcommand("empirical", "matching bound on a dataset");
    cmd_emp->add_option("--format", emp.format, "idx | cifar10 | csv")->required();
    cmd_emp->add_option("--images", emp.images, "image/batch/csv file (repeatable)")
        ->required();
    cmd_emp->add_option("--labels", emp.labels, "labels file (idx format)");
    cmd_emp->add_option("--class-a", emp.class_a, "positive class label")->required();
    cmd_emp->add_option("--class-b", emp.class_b, "negative class label")->required();
    cmd_emp->add_option("--k", emp.k, "samples per class (default: all available)");
    cmd_emp->add_option("--norm", emp.norm, "l1 | l2 | linf")->capture_default_str();
    cmd_emp->add_option("--betas", emp_betas, "grid min:max:step or comma list")->required();
    cmd_emp->add_option("--seed", emp.seed, "subsampling seed")->capture_default_str();
    cmd_emp->add_option("--out", emp.out, "output CSV path")->required();
    cmd_emp->add_option("--cache", emp.cache, "distance-matrix cache file");
    cmd_emp->add_option("--threads", emp.threads, "worker threads");

    advt::cli::GaussianConfig gau;
    std::string gau_betas;
    auto* cmd_gau = app.add_subcommand("gaussian", "analytic Gaussian curve");
    cmd_gau->add_option("--d", gau.d, "dimension (with --mu-seed)");
    cmd_gau->add_option("--mu", gau.mu_inline, "mean vector entries");
    cmd_gau->add_option("--mu-file", gau.mu_file, "mean vector file");
    cmd_gau->add_option("--mu-seed", gau.mu_seed, "sample mu ~ N(0, scale^2 I)");
    cmd_gau->add_option("--mu-scale", gau.mu_scale, "scale for sampled mu")
        ->capture_default_str();
    cmd_gau->add_option("--sigma-file", gau.sigma_file, "dense covariance CSV (default I)");
    cmd_gau->add_option("--norm", gau.norm, "l1 | l2 | linf")->capture_default_str();
    cmd_gau->add_option("--betas", gau_betas, "grid min:max:step or comma list")->required();
    cmd_gau->add_option("--tol", gau.tol, "certificate tolerance")->capture_default_str();
    cmd_gau->add_option("--max-iters", gau.max_iters, "solver iteration cap")
        ->capture_default_str();
    cmd_gau->add_option("--out", gau.out, "output CSV path")->required();
    cmd_gau->add_option("--threads", gau.threads, "worker threads");

    advt::cli::BayesConfig bay;
    auto* cmd_bay = app.add_subcommand("bayes", "sample-complexity curve");
    cmd_bay->add_option("--d", bay.d, "dimension")->required();
    cmd_bay->add_option("--m", bay.m, "prior precision (mu ~ N(0, I/m))")->required();
    cmd_bay->add_option("--ns", bay.ns, "training sample counts")->required();
    cmd_bay->add_option("--norm", bay.norm, "l1 | l2 | linf")->capture_default_str();
    cmd_bay->add_option("--beta", bay.beta, "adversary budget")->capture_default_str();
    cmd_bay->add_option("--trials", bay.trials, "Monte-Carlo trials per row")
        ->capture_default_str();
    cmd_bay->add_option("--seed", bay.seed, "Monte-Carlo seed")->capture_default_str();
    cmd_bay->add_option("--out", bay.out, "output CSV path")->required();
    cmd_bay->add_option("--threads", bay.threads, "worker threads");

    const unsigned hw = advt::default_threads();
    emp.threads = gau.threads = bay.threads = hw;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 returns 0 for --help; map real parse errors to 2
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cmd_emp->parsed()) {
            emp.betas = advt::cli::parse_beta_grid(emp_betas);
            advt::cli::run_empirical(emp);
        } else if (cmd_gau->parsed()) {
            gau.betas = advt::cli::parse_beta_grid(gau_betas);
            if (advt::cli::run_gaussian(gau) > 0) return 3;
        } else if (cmd_bay->parsed()) {
            advt::cli::run_bayes(bay);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const advt::data::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
