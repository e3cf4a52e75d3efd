#include "advt/cost/cost.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "advt/kernels/kernels.hpp"
#include "advt/parallel.hpp"

namespace advt::cost {

double DistanceMatrix::max_value() const noexcept {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
}

DistanceMatrix pairwise_distances(const data::BinaryTask& task, const BallSpec& ball,
                                  unsigned threads) {
    const std::size_t k = task.k();
    const std::size_t d = task.dim;
    DistanceMatrix out;
    out.k = k;
    out.dim = d;
    out.values.resize(k * k);

    if (ball.kind == BallKind::Mahalanobis) {
        const SpdMatrix& s = *ball.factor;
        parallel_for(k, threads, [&](std::size_t i) {
            for (std::size_t j = 0; j < k; ++j) {
                const Vector diff = sub(task.class_pos[i], task.class_neg[j]);
                out.values[i * k + j] = s.inv_quad_norm(diff);
            }
        });
        return out;
    }

    parallel_for(k, threads, [&](std::size_t i) {
        const double* a = task.class_pos[i].data();
        for (std::size_t j = 0; j < k; ++j) {
            const double* b = task.class_neg[j].data();
            double v = 0.0;
            switch (ball.kind) {
                case BallKind::L1: v = kernels::l1(a, b, d); break;
                case BallKind::L2: v = std::sqrt(kernels::l2_sq(a, b, d)); break;
                case BallKind::Linf: v = kernels::linf(a, b, d); break;
                case BallKind::Mahalanobis: break;  // handled above
            }
            out.values[i * k + j] = v;
        }
    });
    return out;
}

std::size_t IndistGraph::edge_count() const noexcept {
    std::size_t n = 0;
    for (std::uint64_t w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

IndistGraph threshold(const DistanceMatrix& d, double beta) {
    if (beta < 0.0) throw std::invalid_argument("threshold: beta must be >= 0");
    IndistGraph g(d.k);
    const double limit = 2.0 * beta;
    for (std::size_t i = 0; i < d.k; ++i) {
        for (std::size_t j = 0; j < d.k; ++j) {
            if (d.at(i, j) <= limit) g.set_edge(i, j);
        }
    }
    return g;
}

namespace {
constexpr char kMagic[4] = {'A', 'D', 'V', 'D'};

void put_u32(std::ofstream& out, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
                 char((v >> 24) & 0xff)};
    out.write(b, 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}
}  // namespace

void save_distance_matrix(const DistanceMatrix& d, const std::string& path) {
    static_assert(std::endian::native == std::endian::little,
                  "distance cache assumes a little-endian host");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data::DataError(path + ": cannot open for writing");
    out.write(kMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(d.k));
    put_u32(out, static_cast<std::uint32_t>(d.dim));
    put_u32(out, 0);
    out.write(reinterpret_cast<const char*>(d.values.data()),
              static_cast<std::streamsize>(d.values.size() * sizeof(double)));
    if (!out) throw data::DataError(path + ": write failed");
}

DistanceMatrix load_distance_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data::DataError(path + ": cannot open file");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw data::DataError(path + ": not a distance cache (bad magic)");
    DistanceMatrix d;
    d.k = get_u32(in);
    d.dim = get_u32(in);
    get_u32(in);  // reserved
    d.values.resize(d.k * d.k);
    in.read(reinterpret_cast<char*>(d.values.data()),
            static_cast<std::streamsize>(d.values.size() * sizeof(double)));
    if (!in) throw data::DataError(path + ": truncated distance cache");
    return d;
}

}  // namespace advt::cost
