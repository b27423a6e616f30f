#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rng.hpp"
#include "stats.hpp"

using namespace stablefast;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors from the Random123 known-answer tests.
    auto out = Philox::block({0, 0, 0, 0}, {0, 0});
    CHECK(out == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du,
                                              0xbc57ac4cu, 0x9b00dbd8u});
    out = Philox::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                        {0xffffffffu, 0xffffffffu});
    CHECK(out == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu,
                                              0xa20bc7c6u, 0x6d5451fdu});
    out = Philox::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                        {0xa4093822u, 0x299f31d0u});
    CHECK(out == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu,
                                              0x5001e420u, 0x24126ea1u});
}

TEST_CASE("identical streams reproduce identical sequences") {
    Philox a(RngStream{42, 7});
    Philox b(RngStream{42, 7});
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids give distinct sequences") {
    Philox a(RngStream{42, 7});
    Philox b(RngStream{42, 8});
    std::set<std::uint64_t> seen;
    bool all_equal = true;
    for (int i = 0; i < 64; ++i) {
        const auto x = a.next_u64(), y = b.next_u64();
        if (x != y) all_equal = false;
        seen.insert(x);
        seen.insert(y);
    }
    CHECK_FALSE(all_equal);
    CHECK(seen.size() == 128);  // no collisions in this window
}

TEST_CASE("cross-stream independence: sign correlation vanishes") {
    // Correlation between matched draws of neighbouring streams.
    const long n = 100000;
    RunningStat prod;
    for (long i = 0; i < n; ++i) {
        Philox a(substream(RngStream{123, 0}, 0x100, 0, std::uint32_t(i)));
        Philox b(substream(RngStream{123, 0}, 0x100, 1, std::uint32_t(i)));
        const double sa = a.uniform() < 0.5 ? -1.0 : 1.0;
        const double sb = b.uniform() < 0.5 ? -1.0 : 1.0;
        prod.add(sa * sb);
    }
    CHECK(std::abs(prod.mean()) < 3.0 * prod.stderror() + 1e-12);
}

TEST_CASE("uniform stays inside the open interval and is uniform") {
    Philox rng(RngStream{7, 0});
    RunningStat acc;
    for (int i = 0; i < 200000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        acc.add(u);
    }
    CHECK(std::abs(acc.mean() - 0.5) < 4.0 * acc.stderror());
}

TEST_CASE("gaussian moments") {
    Philox rng(RngStream{8, 0});
    RunningStat m1, m2;
    for (int i = 0; i < 200000; ++i) {
        const double z = rng.gaussian();
        m1.add(z);
        m2.add(z * z);
    }
    CHECK(std::abs(m1.mean()) < 4.0 * m1.stderror());
    CHECK(std::abs(m2.mean() - 1.0) < 4.0 * m2.stderror());
}
