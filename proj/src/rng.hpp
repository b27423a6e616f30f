#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace stablefast {

// Identifies one reproducible random stream. Identical (seed, stream) values
// reproduce identical sample sequences; distinct stream ids index disjoint
// counter blocks of the generator and are statistically independent.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// Stream ids are composed as [tag:16][sub:16][index:32] on top of a base id.
// Every (tag, sub, index) triple used with the same seed is an independent
// stream; experiment call sites own the tag/sub blocks, path loops the index.
constexpr RngStream substream(RngStream base, std::uint16_t tag,
                              std::uint16_t sub, std::uint32_t index) {
    return RngStream{base.seed,
                     base.stream + ((std::uint64_t(tag) << 48) |
                                    (std::uint64_t(sub) << 32) | index)};
}

constexpr RngStream path_stream(RngStream base, std::uint64_t path_index) {
    return RngStream{base.seed, base.stream + path_index};
}

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// Key = 64-bit seed, counter = 64-bit stream id + 64-bit block position, so
// samplers are stateless given an RngStream value and streams can move
// between threads freely.
class Philox {
  public:
    explicit Philox(RngStream s)
        : k0_(std::uint32_t(s.seed)), k1_(std::uint32_t(s.seed >> 32)),
          s0_(std::uint32_t(s.stream)), s1_(std::uint32_t(s.stream >> 32)) {}

    // One 4x32 block; exposed for the known-answer tests.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);

    std::uint64_t next_u64() {
        if (have_ == 0) refill();
        const int i = 4 - have_;
        have_ -= 2;
        return std::uint64_t(buf_[i]) | (std::uint64_t(buf_[i + 1]) << 32);
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double uniform() {
        return (double(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Exp(1) variate.
    double exponential() { return -std::log(uniform()); }

    // Standard normal via Box-Muller; pairs are cached.
    double gaussian() {
        if (have_gauss_) {
            have_gauss_ = false;
            return cached_gauss_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 6.283185307179586476925286766559 * uniform();
        cached_gauss_ = r * std::sin(theta);
        have_gauss_ = true;
        return r * std::cos(theta);
    }

  private:
    void refill();

    std::uint32_t k0_, k1_, s0_, s1_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int have_ = 0;
    double cached_gauss_ = 0.0;
    bool have_gauss_ = false;
};

}  // namespace stablefast
