// Hill tail-index bias scan over alpha and tail fraction.
#include <cstdio>
#include <vector>

#include "stable.hpp"
#include "stats.hpp"

using namespace stablefast;

int main() {
    const long n = 1000000;
    for (double alpha : {1.2, 1.5, 1.8}) {
        std::vector<double> draws(static_cast<std::size_t>(n));
        Philox rng(RngStream{31337, std::uint64_t(alpha * 1000)});
        for (auto& d : draws) d = sample_sym_stable_1d(alpha, rng);
        std::printf("alpha=%.1f:", alpha);
        for (double frac : {0.02, 0.01, 0.005, 0.002, 0.001})
            std::printf("  f=%.3f -> %.4f", frac,
                        hill_tail_index(draws, frac));
        std::printf("\n");
    }
    return 0;
}
