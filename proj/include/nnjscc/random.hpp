#pragma once

// Counter-based random streams (Philox 4x32-10, Salmon et al. SC'11).
//
// A stream is addressed by (master_seed, stream_id) and is reachable in O(1)
// without iterating any other stream, so parallel schedules cannot perturb
// results: workers may consume streams in any order and every stream yields
// the same sequence.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace nnjscc {

namespace detail {

inline void philox_mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(prod);
    hi = static_cast<std::uint32_t>(prod >> 32);
}

inline void philox_round(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
    std::uint32_t lo0, hi0, lo1, hi1;
    philox_mulhilo(0xD2511F53u, ctr[0], lo0, hi0);
    philox_mulhilo(0xCD9E8D57u, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline std::array<std::uint32_t, 4> philox10(std::array<std::uint32_t, 4> ctr,
                                             std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
    }
    return ctr;
}

}  // namespace detail

class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          base_{0, 0, static_cast<std::uint32_t>(stream_id),
                static_cast<std::uint32_t>(stream_id >> 32)} {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on the open interval (0,1), 52-bit resolution.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1p-52;
    }

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    void gaussian_fill(std::vector<double>& out, std::size_t count) {
        out.resize(count);
        for (std::size_t i = 0; i < count; ++i) out[i] = gaussian();
    }

    // Uniform integer in [1, m] for integral m held in a double (m >= 1).
    std::uint64_t uniform_index(double m) {
        double j = std::floor(uniform01() * m);
        if (j >= m) j = m - 1.0;
        return static_cast<std::uint64_t>(j) + 1;
    }

private:
    void refill() {
        std::array<std::uint32_t, 4> ctr = base_;
        ctr[0] = static_cast<std::uint32_t>(block_);
        ctr[1] = base_[1] + static_cast<std::uint32_t>(block_ >> 32);
        buf_ = detail::philox10(ctr, key_);
        ++block_;
        pos_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> base_;
    std::array<std::uint32_t, 4> buf_{};
    std::uint64_t block_ = 0;
    int pos_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stream id space: trials occupy [0, 2^63); auxiliary streams live above.
inline constexpr std::uint64_t kEnsembleStreamId = 0x8000000000000000ull;
inline constexpr std::uint64_t kRcuStreamId = 0x8000000000000001ull;

}  // namespace nnjscc
