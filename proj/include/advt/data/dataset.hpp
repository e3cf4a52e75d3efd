#pragma once
// Dataset ingestion: IDX (MNIST family, plain or gzip), CIFAR-10 binary
// batches, and a small CSV dialect (no quoting). Loaded examples become a
// BinaryTask: two equal-size classes of feature vectors.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "advt/numerics/vec.hpp"

namespace advt::data {

// Raised for malformed or unreadable input files; the message carries the
// file path and, where it helps, an offset or line number.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LabeledDataset {
    std::size_t dim = 0;
    std::vector<Vector> features;
    std::vector<int> labels;

    std::size_t size() const noexcept { return features.size(); }
};

// IDX pair: images file (magic 0x00000803) + labels file (0x00000801).
// Pixel bytes are scaled by 1/255. Gzip-compressed files are detected by
// their 0x1f 0x8b signature and inflated transparently.
LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path);

// CIFAR-10 binary batches: 3073-byte records, label byte then 3072 pixel
// bytes (R,G,B planes); pixels scaled by 1/255.
LabeledDataset load_cifar10(const std::vector<std::string>& batch_paths);

// CSV: integer label in the first column, real features after. Features are
// taken as-is. A non-numeric first line is skipped with a warning on stderr.
LabeledDataset load_csv(const std::string& path);

struct BinaryTask {
    std::vector<Vector> class_pos;  // label class_a
    std::vector<Vector> class_neg;  // label class_b
    std::size_t dim = 0;
    // provenance
    std::string source;
    int label_pos = 0;
    int label_neg = 0;
    std::uint64_t seed = 0;

    std::size_t k() const noexcept { return class_pos.size(); }
};

// Seeded uniform subsample of k examples per class, without replacement,
// emitted in source order. Throws DataError when a class has fewer than k
// examples (the message reports the available counts).
BinaryTask make_binary_task(const LabeledDataset& data, int class_a, int class_b,
                            std::size_t k, std::uint64_t seed);

// Build a task directly from two vector lists (used by synthetic pipelines).
BinaryTask make_binary_task(std::vector<Vector> pos, std::vector<Vector> neg);

// CSV round trip for tasks: label column (+1/-1) then features, shortest
// round-trip float formatting so save/load reproduces values bit-exactly.
void save_task_csv(const BinaryTask& task, const std::string& path);
BinaryTask load_task_csv(const std::string& path);

}  // namespace advt::data
