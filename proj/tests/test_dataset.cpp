#include <doctest.h>
#include <zlib.h>
#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "advt/data/dataset.hpp"

using namespace advt;
using namespace advt::data;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("advt_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void push_be32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back((x >> 24) & 0xff);
    v.push_back((x >> 16) & 0xff);
    v.push_back((x >> 8) & 0xff);
    v.push_back(x & 0xff);
}

// 2 images of 2x2 pixels with known byte values, labels {3, 7}
std::vector<std::uint8_t> idx_images_fixture() {
    std::vector<std::uint8_t> v;
    push_be32(v, 0x00000803);
    push_be32(v, 2);  // n
    push_be32(v, 2);  // rows
    push_be32(v, 2);  // cols
    for (std::uint8_t b : {0, 51, 102, 255, 10, 20, 30, 40}) v.push_back(b);
    return v;
}

std::vector<std::uint8_t> idx_labels_fixture(std::uint32_t n = 2) {
    std::vector<std::uint8_t> v;
    push_be32(v, 0x00000801);
    push_be32(v, n);
    if (n >= 1) v.push_back(3);
    if (n >= 2) v.push_back(7);
    return v;
}

std::vector<std::uint8_t> gzip_bytes(const std::vector<std::uint8_t>& in) {
    z_stream zs{};
    REQUIRE(deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8,
                         Z_DEFAULT_STRATEGY) == Z_OK);
    std::vector<std::uint8_t> out(in.size() + 128);
    zs.next_in = const_cast<std::uint8_t*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    REQUIRE(deflate(&zs, Z_FINISH) == Z_STREAM_END);
    out.resize(out.size() - zs.avail_out);
    deflateEnd(&zs);
    return out;
}

}  // namespace

TEST_CASE("load_idx parses a known fixture with byte/255 scaling") {
    TempDir tmp;
    write_bytes(tmp.file("img"), idx_images_fixture());
    write_bytes(tmp.file("lbl"), idx_labels_fixture());
    const auto ds = load_idx(tmp.file("img"), tmp.file("lbl"));
    REQUIRE(ds.size() == 2);
    CHECK(ds.dim == 4);
    CHECK(ds.labels[0] == 3);
    CHECK(ds.labels[1] == 7);
    CHECK(ds.features[0][0] == 0.0);
    CHECK(ds.features[0][1] == doctest::Approx(51.0 / 255.0));
    CHECK(ds.features[0][3] == 1.0);
    CHECK(ds.features[1][2] == doctest::Approx(30.0 / 255.0));
    for (const auto& f : ds.features)
        for (double x : f) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
        }
}

TEST_CASE("load_idx accepts gzip transparently") {
    TempDir tmp;
    write_bytes(tmp.file("img.gz"), gzip_bytes(idx_images_fixture()));
    write_bytes(tmp.file("lbl.gz"), gzip_bytes(idx_labels_fixture()));
    const auto ds = load_idx(tmp.file("img.gz"), tmp.file("lbl.gz"));
    REQUIRE(ds.size() == 2);
    CHECK(ds.features[0][3] == 1.0);
}

TEST_CASE("load_idx error paths") {
    TempDir tmp;

    // empty payload is fine
    std::vector<std::uint8_t> empty_img;
    push_be32(empty_img, 0x00000803);
    push_be32(empty_img, 0);
    push_be32(empty_img, 2);
    push_be32(empty_img, 2);
    write_bytes(tmp.file("e_img"), empty_img);
    write_bytes(tmp.file("e_lbl"), idx_labels_fixture(0));
    CHECK(load_idx(tmp.file("e_img"), tmp.file("e_lbl")).size() == 0);

    // wrong magic
    std::vector<std::uint8_t> bad;
    push_be32(bad, 0x00000802);
    push_be32(bad, 0);
    push_be32(bad, 0);
    write_bytes(tmp.file("bad"), bad);
    write_bytes(tmp.file("lbl"), idx_labels_fixture());
    CHECK_THROWS_WITH_AS(load_idx(tmp.file("bad"), tmp.file("lbl")),
                         doctest::Contains("unsupported IDX element type"), DataError);

    // truncated payload
    auto trunc = idx_images_fixture();
    trunc.resize(trunc.size() - 3);
    write_bytes(tmp.file("trunc"), trunc);
    CHECK_THROWS_WITH_AS(load_idx(tmp.file("trunc"), tmp.file("lbl")),
                         doctest::Contains("truncated"), DataError);

    // count mismatch
    write_bytes(tmp.file("img"), idx_images_fixture());
    write_bytes(tmp.file("lbl1"), idx_labels_fixture(1));
    CHECK_THROWS_WITH_AS(load_idx(tmp.file("img"), tmp.file("lbl1")),
                         doctest::Contains("does not match label count"), DataError);

    CHECK_THROWS_AS(load_idx(tmp.file("missing"), tmp.file("lbl")), DataError);
}

TEST_CASE("load_cifar10 parses records and rejects malformed batches") {
    TempDir tmp;
    std::vector<std::uint8_t> batch(2 * 3073, 0);
    batch[0] = 5;                         // record 0 label
    batch[1] = 255;                       // first pixel
    batch[3073] = 0;                      // record 1: all-zero
    write_bytes(tmp.file("batch.bin"), batch);
    const auto ds = load_cifar10({tmp.file("batch.bin")});
    REQUIRE(ds.size() == 2);
    CHECK(ds.dim == 3072);
    CHECK(ds.labels[0] == 5);
    CHECK(ds.features[0][0] == 1.0);
    CHECK(ds.labels[1] == 0);
    CHECK(l2_norm(ds.features[1]) == 0.0);

    std::vector<std::uint8_t> trunc(3073 + 100, 0);
    write_bytes(tmp.file("trunc.bin"), trunc);
    CHECK_THROWS_WITH_AS(load_cifar10({tmp.file("trunc.bin")}),
                         doctest::Contains("truncated record at byte 3073"), DataError);

    std::vector<std::uint8_t> badlabel(3073, 0);
    badlabel[0] = 11;
    write_bytes(tmp.file("badlabel.bin"), badlabel);
    CHECK_THROWS_WITH_AS(load_cifar10({tmp.file("badlabel.bin")}),
                         doctest::Contains("label byte 11"), DataError);
}

TEST_CASE("load_csv basics, header skip and ragged rows") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("ok.csv"));
        out << "1,0.5,0.25\n-1,0.125,2.5\n";
    }
    const auto ds = load_csv(tmp.file("ok.csv"));
    REQUIRE(ds.size() == 2);
    CHECK(ds.labels[0] == 1);
    CHECK(ds.labels[1] == -1);
    CHECK(ds.features[0][0] == 0.5);
    CHECK(ds.features[0][1] == 0.25);

    {
        std::ofstream out(tmp.file("hdr.csv"));
        out << "label,x1,x2\n1,0.5,0.25\n";
    }
    CHECK(load_csv(tmp.file("hdr.csv")).size() == 1);

    {
        std::ofstream out(tmp.file("ragged.csv"));
        out << "1,0.5,0.25\n1,0.5\n";
    }
    CHECK_THROWS_WITH_AS(load_csv(tmp.file("ragged.csv")), doctest::Contains(":2:"),
                         DataError);

    {
        std::ofstream out(tmp.file("nonnum.csv"));
        out << "1,0.5,0.25\n1,abc,0.5\n";
    }
    CHECK_THROWS_WITH_AS(load_csv(tmp.file("nonnum.csv")),
                         doctest::Contains("non-numeric cell"), DataError);
}

TEST_CASE("make_binary_task subsamples deterministically") {
    LabeledDataset ds;
    ds.dim = 1;
    for (int i = 0; i < 40; ++i) {
        ds.features.push_back(Vector{i / 40.0});
        ds.labels.push_back(i % 2);
    }
    const auto t1 = make_binary_task(ds, 0, 1, 8, 42);
    const auto t2 = make_binary_task(ds, 0, 1, 8, 42);
    REQUIRE(t1.k() == 8);
    CHECK(t1.class_pos == t2.class_pos);
    CHECK(t1.class_neg == t2.class_neg);

    const auto t3 = make_binary_task(ds, 0, 1, 8, 43);
    CHECK(t1.class_pos != t3.class_pos);  // different seed picks differently

    // k = all available uses the full class sets
    const auto full = make_binary_task(ds, 0, 1, 20, 7);
    CHECK(full.k() == 20);

    CHECK_THROWS_WITH_AS(make_binary_task(ds, 0, 1, 21, 7),
                         doctest::Contains("insufficient examples"), DataError);

    // subsampling follows source order positions, so permuting the source
    // changes the selection even at a fixed seed
    LabeledDataset shuffled = ds;
    std::reverse(shuffled.features.begin(), shuffled.features.end());
    std::reverse(shuffled.labels.begin(), shuffled.labels.end());
    const auto t4 = make_binary_task(shuffled, 0, 1, 8, 42);
    CHECK(t1.class_pos != t4.class_pos);
}

TEST_CASE("task CSV round trip is bit exact") {
    std::vector<Vector> pos, neg;
    pos.push_back(Vector{0.1, 1.0 / 3.0, 2.5e-17});
    pos.push_back(Vector{-1.75, 0.0, 9.87654321e100});
    neg.push_back(Vector{3.14159265358979, -2.718281828459045, 1e-300});
    neg.push_back(Vector{0.5, 0.25, -0.125});
    const auto task = data::make_binary_task(pos, neg);

    TempDir tmp;
    save_task_csv(task, tmp.file("task.csv"));
    const auto back = load_task_csv(tmp.file("task.csv"));
    REQUIRE(back.k() == task.k());
    for (std::size_t i = 0; i < task.k(); ++i) {
        for (std::size_t j = 0; j < task.dim; ++j) {
            CHECK(back.class_pos[i][j] == task.class_pos[i][j]);
            CHECK(back.class_neg[i][j] == task.class_neg[i][j]);
        }
    }
}
