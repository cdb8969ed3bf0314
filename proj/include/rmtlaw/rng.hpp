#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace rmtlaw {

// Philox4x32-10 block function: encrypts a 128-bit counter under a 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// A counter-based random stream. The key is the run seed and the upper half
// of the counter is the stream id, so stream (seed, id) is a pure function
// of its two arguments and independent of how streams are scheduled.
// Streams are single-owner values; copy one to fork it.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next_u64(); }
    std::uint64_t next_u64();

    // Uniform on the open interval (0, 1), 53 bits of resolution.
    double uniform();

    // Standard normal via Box-Muller; the second variate of each pair is
    // kept for the next call.
    double normal();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned used_ = 4;  // 32-bit words consumed from buffer_
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rmtlaw
