#include "advt/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "advt/bayes/bayes.hpp"
#include "advt/cost/cost.hpp"
#include "advt/data/dataset.hpp"
#include "advt/gaussian/gaussian.hpp"
#include "advt/matching/matching.hpp"
#include "advt/numerics/rng.hpp"
#include "advt/parallel.hpp"

namespace advt::cli {

namespace {

std::string format_double(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& header) : out_(path, std::ios::binary) {
        if (!out_) throw data::DataError(path + ": cannot open for writing");
        out_ << header << '\n';
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

double parse_number(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty())
        throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("beta grid is empty");
    double prev = -1.0;
    for (double b : grid) {
        if (b < 0.0) throw std::invalid_argument("beta grid values must be >= 0");
        if (b <= prev) throw std::invalid_argument("beta grid must be strictly increasing");
        prev = b;
    }
}

}  // namespace

std::vector<double> parse_beta_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        std::stringstream ss(text);
        std::string a, b, s;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, s))
            throw std::invalid_argument("grid must be min:max:step");
        const double lo = parse_number(a), hi = parse_number(b), step = parse_number(s);
        if (step <= 0.0) throw std::invalid_argument("grid step must be > 0");
        // inclusive of both endpoints within float slack
        const double slack = step * 1e-9;
        for (std::size_t i = 0;; ++i) {
            const double v = lo + static_cast<double>(i) * step;
            if (v > hi + slack) break;
            grid.push_back(std::min(v, hi));
        }
    } else {
        std::stringstream ss(text);
        std::string cell;
        while (std::getline(ss, cell, ',')) grid.push_back(parse_number(cell));
    }
    check_grid(grid);
    return grid;
}

void run_empirical(const EmpiricalConfig& cfg) {
    data::LabeledDataset dataset;
    if (cfg.format == "idx") {
        if (cfg.images.size() != 1 || cfg.labels.empty())
            throw std::invalid_argument("idx format needs --images FILE and --labels FILE");
        dataset = data::load_idx(cfg.images[0], cfg.labels);
    } else if (cfg.format == "cifar10") {
        if (cfg.images.empty())
            throw std::invalid_argument("cifar10 format needs at least one --images batch");
        dataset = data::load_cifar10(cfg.images);
    } else if (cfg.format == "csv") {
        if (cfg.images.size() != 1)
            throw std::invalid_argument("csv format needs exactly one --images file");
        dataset = data::load_csv(cfg.images[0]);
    } else {
        throw std::invalid_argument("unknown --format '" + cfg.format + "'");
    }

    std::size_t k = cfg.k;
    if (k == 0) {
        std::size_t na = 0, nb = 0;
        for (int l : dataset.labels) {
            na += l == cfg.class_a;
            nb += l == cfg.class_b;
        }
        k = std::min(na, nb);
    }
    const data::BinaryTask task =
        data::make_binary_task(dataset, cfg.class_a, cfg.class_b, k, cfg.seed);
    std::cerr << "task: k=" << task.k() << " per class, d=" << task.dim << "\n";

    const BallSpec ball = parse_ball(cfg.norm);
    cost::DistanceMatrix dist;
    bool from_cache = false;
    if (!cfg.cache.empty() && std::filesystem::exists(cfg.cache)) {
        dist = cost::load_distance_matrix(cfg.cache);
        if (dist.k == task.k() && dist.dim == task.dim) {
            from_cache = true;
            std::cerr << "distance matrix: loaded from " << cfg.cache << "\n";
        } else {
            std::cerr << "distance cache mismatch (k=" << dist.k << ", d=" << dist.dim
                      << "); recomputing\n";
        }
    }
    if (!from_cache) {
        dist = cost::pairwise_distances(task, ball, cfg.threads);
        if (!cfg.cache.empty()) cost::save_distance_matrix(dist, cfg.cache);
    }

    struct Row {
        std::size_t matched;
        matching::RobustnessBound bound;
    };
    std::vector<Row> rows(cfg.betas.size());
    parallel_for(cfg.betas.size(), cfg.threads, [&](std::size_t i) {
        const cost::IndistGraph g = cost::threshold(dist, cfg.betas[i]);
        const matching::MatchingResult m = matching::max_matching(g);
        rows[i] = {m.size, matching::transport_cost(m.size, task.k())};
    });

    CsvWriter csv(cfg.out, "beta,matching_size,transport_cost,min_loss");
    for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
        csv.row({format_double(cfg.betas[i]), std::to_string(rows[i].matched),
                 format_double(rows[i].bound.transport_cost),
                 format_double(rows[i].bound.min_loss)});
    }
    std::cerr << "wrote " << cfg.betas.size() << " rows to " << cfg.out << "\n";
}

namespace {

Vector load_mu(const GaussianConfig& cfg) {
    if (!cfg.mu_inline.empty()) return cfg.mu_inline;
    if (!cfg.mu_file.empty()) {
        std::ifstream in(cfg.mu_file);
        if (!in) throw data::DataError(cfg.mu_file + ": cannot open file");
        Vector mu;
        double v;
        while (in >> v) {
            mu.push_back(v);
            if (in.peek() == ',') in.get();
        }
        if (mu.empty()) throw data::DataError(cfg.mu_file + ": no values");
        return mu;
    }
    if (cfg.mu_seed) {
        if (cfg.d == 0) throw std::invalid_argument("--mu-seed needs --d");
        RngStream rng(*cfg.mu_seed, 0);
        Vector mu(cfg.d);
        for (double& v : mu) v = cfg.mu_scale * rng.next_gaussian();
        return mu;
    }
    throw std::invalid_argument("provide --mu, --mu-file or --mu-seed");
}

SpdMatrix load_sigma(const GaussianConfig& cfg, std::size_t d) {
    if (cfg.sigma_file.empty()) return SpdMatrix::identity(d);
    std::ifstream in(cfg.sigma_file);
    if (!in) throw data::DataError(cfg.sigma_file + ": cannot open file");
    Vector entries;
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (!cell.empty()) entries.push_back(parse_number(cell));
        }
    }
    if (entries.size() != d * d)
        throw data::DataError(cfg.sigma_file + ": expected " + std::to_string(d * d) +
                              " entries, found " + std::to_string(entries.size()));
    return SpdMatrix(d, std::move(entries));
}

}  // namespace

std::size_t run_gaussian(const GaussianConfig& cfg) {
    const Vector mu = load_mu(cfg);
    const SpdMatrix sigma = load_sigma(cfg, mu.size());
    const BallSpec ball = parse_ball(cfg.norm);

    struct Row {
        gaussian::AlphaCertificate cert;
    };
    std::vector<Row> rows(cfg.betas.size());
    parallel_for(cfg.betas.size(), cfg.threads, [&](std::size_t i) {
        const gaussian::GaussianProblem prob{mu, sigma, ball, cfg.betas[i]};
        rows[i].cert = gaussian::alpha_star(prob, cfg.tol, cfg.max_iters);
    });

    std::size_t nonconverged = 0;
    CsvWriter csv(cfg.out, "beta,alpha_star,optimal_loss,transport_cost,duality_gap");
    for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
        const auto& cert = rows[i].cert;
        const double loss = gaussian::optimal_adv_loss(cert.alpha);
        csv.row({format_double(cfg.betas[i]), format_double(cert.alpha),
                 format_double(loss), format_double(1.0 - 2.0 * loss),
                 format_double(cert.duality_gap)});
        if (!cert.converged) {
            ++nonconverged;
            std::cerr << "warning: solver did not converge at beta=" << cfg.betas[i]
                      << " (max residual " << cert.max_residual() << ")\n";
        }
    }
    std::cerr << "wrote " << cfg.betas.size() << " rows to " << cfg.out << "\n";
    return nonconverged;
}

void run_bayes(const BayesConfig& cfg) {
    if (cfg.ns.empty()) throw std::invalid_argument("bayes: need at least one n");
    const BallSpec ball = parse_ball(cfg.norm);

    struct Row {
        double rho = 0.0;
        bayes::McEstimate loss;
        bayes::SchmidtBound schmidt;
    };
    std::vector<Row> rows(cfg.ns.size());
    parallel_for(cfg.ns.size(), cfg.threads, [&](std::size_t i) {
        bayes::BayesSetup setup{cfg.d, cfg.m, cfg.ns[i], ball, cfg.beta};
        rows[i].rho = bayes::rho(cfg.m, cfg.ns[i]);
        rows[i].loss = bayes::bayes_loss_via_membership(setup, cfg.trials, cfg.seed);
        rows[i].schmidt = bayes::schmidt_lower_bound(setup, cfg.trials, cfg.seed);
    });

    CsvWriter csv(cfg.out, "n,rho,bayes_loss,bayes_se,schmidt_bound,schmidt_se");
    for (std::size_t i = 0; i < cfg.ns.size(); ++i) {
        const auto& r = rows[i];
        csv.row({std::to_string(cfg.ns[i]), format_double(r.rho),
                 format_double(r.loss.value), format_double(r.loss.standard_error),
                 format_double(r.schmidt.indistinguishable.value),
                 format_double(r.schmidt.indistinguishable.standard_error)});
    }
    std::cerr << "wrote " << cfg.ns.size() << " rows to " << cfg.out << "\n";
}

}  // namespace advt::cli
