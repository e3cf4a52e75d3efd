#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "advt/data/dataset.hpp"
#include "advt/numerics/rng.hpp"

namespace advt::data {

namespace {

void check_task(const BinaryTask& t) {
    if (t.class_pos.size() != t.class_neg.size())
        throw DataError("binary task: class sizes differ");
    if (t.class_pos.empty()) throw DataError("binary task: empty classes");
    for (const auto* cls : {&t.class_pos, &t.class_neg}) {
        for (const auto& v : *cls) {
            if (v.size() != t.dim) throw DataError("binary task: inconsistent dimensions");
            for (double x : v)
                if (!std::isfinite(x)) throw DataError("binary task: non-finite feature");
        }
    }
}

// k distinct indices from [0, n), chosen by a partial Fisher-Yates driven by
// the stream, then sorted so the subsample preserves source order.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, RngStream& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_u64() % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

BinaryTask make_binary_task(const LabeledDataset& data, int class_a, int class_b,
                            std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> a_idx, b_idx;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.labels[i] == class_a) a_idx.push_back(i);
        if (data.labels[i] == class_b) b_idx.push_back(i);
    }
    if (a_idx.size() < k || b_idx.size() < k) {
        throw DataError("insufficient examples: class " + std::to_string(class_a) +
                        " has " + std::to_string(a_idx.size()) + ", class " +
                        std::to_string(class_b) + " has " + std::to_string(b_idx.size()) +
                        ", requested k=" + std::to_string(k));
    }
    BinaryTask t;
    t.dim = data.dim;
    t.label_pos = class_a;
    t.label_neg = class_b;
    t.seed = seed;
    RngStream rng_a(seed, 0);
    RngStream rng_b(seed, 1);
    for (std::size_t i : sample_indices(a_idx.size(), k, rng_a))
        t.class_pos.push_back(data.features[a_idx[i]]);
    for (std::size_t i : sample_indices(b_idx.size(), k, rng_b))
        t.class_neg.push_back(data.features[b_idx[i]]);
    check_task(t);
    return t;
}

BinaryTask make_binary_task(std::vector<Vector> pos, std::vector<Vector> neg) {
    BinaryTask t;
    t.class_pos = std::move(pos);
    t.class_neg = std::move(neg);
    t.dim = t.class_pos.empty() ? 0 : t.class_pos.front().size();
    t.label_pos = 1;
    t.label_neg = -1;
    check_task(t);
    return t;
}

namespace {

void append_double(std::string& out, double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    out.append(buf, end);
}

}  // namespace

void save_task_csv(const BinaryTask& task, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(path + ": cannot open for writing");
    std::string line;
    auto write_class = [&](const std::vector<Vector>& cls, int label) {
        for (const auto& v : cls) {
            line.clear();
            line += std::to_string(label);
            for (double x : v) {
                line += ',';
                append_double(line, x);
            }
            line += '\n';
            out << line;
        }
    };
    write_class(task.class_pos, 1);
    write_class(task.class_neg, -1);
}

BinaryTask load_task_csv(const std::string& path) {
    const LabeledDataset data = load_csv(path);
    std::vector<Vector> pos, neg;
    for (std::size_t i = 0; i < data.size(); ++i) {
        (data.labels[i] == 1 ? pos : neg).push_back(data.features[i]);
    }
    BinaryTask t = make_binary_task(std::move(pos), std::move(neg));
    t.source = path;
    return t;
}

}  // namespace advt::data
