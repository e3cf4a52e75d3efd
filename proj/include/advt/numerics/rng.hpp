#pragma once
// Counter-based random streams. A stream is a pure function of
// (seed, stream_id, counter), so Monte-Carlo runs are bit-reproducible
// no matter how trials are chunked across workers: give each chunk its
// own stream_id and never share a generator.

#include <cstdint>

namespace advt {

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t next_u64() noexcept;

    // Uniform on (0, 1].
    double next_uniform() noexcept;

    // Standard normal via Box-Muller; generates in pairs, caches the second.
    double next_gaussian() noexcept;

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace advt
