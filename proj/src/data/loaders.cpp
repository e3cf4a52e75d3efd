#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>

#include "advt/data/dataset.hpp"

namespace advt::data {

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path + ": cannot open file");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

std::vector<std::uint8_t> gunzip(const std::string& path,
                                 const std::vector<std::uint8_t>& in) {
    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK)
        throw DataError(path + ": zlib init failed");
    std::vector<std::uint8_t> out;
    out.reserve(in.size() * 4);
    std::uint8_t buf[1 << 16];
    zs.next_in = const_cast<std::uint8_t*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = buf;
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw DataError(path + ": corrupt gzip stream");
        }
        out.insert(out.end(), buf, buf + (sizeof(buf) - zs.avail_out));
    }
    inflateEnd(&zs);
    return out;
}

// Reads the file, transparently inflating gzip.
std::vector<std::uint8_t> read_maybe_gzip(const std::string& path) {
    auto bytes = read_file(path);
    if (bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b) {
        return gunzip(path, bytes);
    }
    return bytes;
}

std::uint32_t be32(const std::uint8_t* p) noexcept {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

struct IdxHeader {
    std::uint32_t magic;
    std::vector<std::uint32_t> dims;
    std::size_t payload_offset;
};

IdxHeader parse_idx_header(const std::string& path, const std::vector<std::uint8_t>& b,
                           std::uint32_t expected_magic) {
    if (b.size() < 4) throw DataError(path + ": truncated IDX header");
    const std::uint32_t magic = be32(b.data());
    if (magic != expected_magic) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      ": unsupported IDX element type (magic 0x%08x, expected 0x%08x)",
                      magic, expected_magic);
        throw DataError(path + msg);
    }
    const std::size_t ndims = magic & 0xff;
    if (b.size() < 4 + 4 * ndims) throw DataError(path + ": truncated IDX header");
    IdxHeader h{magic, {}, 4 + 4 * ndims};
    for (std::size_t i = 0; i < ndims; ++i) h.dims.push_back(be32(b.data() + 4 + 4 * i));
    return h;
}

}  // namespace

LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path) {
    const auto img_bytes = read_maybe_gzip(images_path);
    const auto lbl_bytes = read_maybe_gzip(labels_path);

    const auto ih = parse_idx_header(images_path, img_bytes, 0x00000803u);
    const auto lh = parse_idx_header(labels_path, lbl_bytes, 0x00000801u);

    const std::size_t n = ih.dims[0];
    const std::size_t rows = ih.dims[1];
    const std::size_t cols = ih.dims[2];
    const std::size_t dim = rows * cols;

    if (lh.dims[0] != n) {
        throw DataError(images_path + ": image count " + std::to_string(n) +
                        " does not match label count " + std::to_string(lh.dims[0]) +
                        " in " + labels_path);
    }
    if (img_bytes.size() < ih.payload_offset + n * dim)
        throw DataError(images_path + ": truncated image payload");
    if (lbl_bytes.size() < lh.payload_offset + n)
        throw DataError(labels_path + ": truncated label payload");

    LabeledDataset out;
    out.dim = dim;
    out.features.reserve(n);
    out.labels.reserve(n);
    const std::uint8_t* px = img_bytes.data() + ih.payload_offset;
    const std::uint8_t* lb = lbl_bytes.data() + lh.payload_offset;
    for (std::size_t i = 0; i < n; ++i) {
        Vector v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = px[i * dim + j] / 255.0;
        out.features.push_back(std::move(v));
        out.labels.push_back(lb[i]);
    }
    return out;
}

LabeledDataset load_cifar10(const std::vector<std::string>& batch_paths) {
    constexpr std::size_t kRecord = 3073;
    constexpr std::size_t kPixels = 3072;
    LabeledDataset out;
    out.dim = kPixels;
    for (const auto& path : batch_paths) {
        const auto bytes = read_maybe_gzip(path);
        if (bytes.size() % kRecord != 0) {
            throw DataError(path + ": truncated record at byte " +
                            std::to_string(bytes.size() - bytes.size() % kRecord));
        }
        const std::size_t n = bytes.size() / kRecord;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint8_t* rec = bytes.data() + i * kRecord;
            if (rec[0] > 9) {
                throw DataError(path + ": label byte " + std::to_string(int(rec[0])) +
                                " > 9 in record " + std::to_string(i));
            }
            Vector v(kPixels);
            for (std::size_t j = 0; j < kPixels; ++j) v[j] = rec[1 + j] / 255.0;
            out.features.push_back(std::move(v));
            out.labels.push_back(rec[0]);
        }
    }
    return out;
}

namespace {

// Parses one CSV line into cells; the dialect has no quoting or escapes.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace

LabeledDataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError(path + ": cannot open file");
    LabeledDataset out;
    std::string line;
    std::size_t lineno = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        double label_val = 0.0;
        if (first_data_line && !parse_double(cells[0], label_val)) {
            std::cerr << path << ": skipping non-numeric header line " << lineno << "\n";
            continue;
        }
        first_data_line = false;
        if (!parse_double(cells[0], label_val) || label_val != std::trunc(label_val)) {
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": first column must be an integer label");
        }
        Vector v(cells.size() - 1);
        for (std::size_t j = 1; j < cells.size(); ++j) {
            if (!parse_double(cells[j], v[j - 1])) {
                throw DataError(path + ":" + std::to_string(lineno) +
                                ": non-numeric cell '" + cells[j] + "'");
            }
        }
        if (out.features.empty()) {
            out.dim = v.size();
        } else if (v.size() != out.dim) {
            throw DataError(path + ":" + std::to_string(lineno) + ": row has " +
                            std::to_string(v.size()) + " features, expected " +
                            std::to_string(out.dim));
        }
        out.labels.push_back(static_cast<int>(label_val));
        out.features.push_back(std::move(v));
    }
    return out;
}

}  // namespace advt::data
