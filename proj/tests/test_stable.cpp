#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stable.hpp"
#include "stats.hpp"

using namespace stablefast;

namespace {

RngStream test_stream(std::uint16_t sub) {
    return substream(RngStream{0xA11CE, 0}, 0x101, sub, 0);
}

std::vector<double> draw_1d(double alpha, long n, std::uint16_t sub) {
    Philox rng(test_stream(sub));
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out) x = sample_sym_stable_1d(alpha, rng);
    return out;
}

}  // namespace

TEST_CASE("alpha domain is enforced") {
    Philox rng(test_stream(0));
    CHECK_THROWS_AS(sample_sym_stable_1d(1.0, rng), DomainError);
    CHECK_THROWS_AS(sample_sym_stable_1d(2.0, rng), DomainError);
    CHECK_THROWS_AS(sample_sym_stable_1d(0.5, rng), DomainError);
    CHECK_THROWS_AS(sample_subordinator_increment(1.5, 0.0, rng), DomainError);
    CHECK_THROWS_AS(sample_subordinator_increment(1.5, -1.0, rng), DomainError);
    CHECK_THROWS_AS(StableSpec(2.0, 1), DomainError);
    CHECK_THROWS_AS(StableSpec(1.5, 0), DomainError);
}

TEST_CASE("symmetric stable: median, characteristic function, Hill index") {
    const long n = 1000000;
    const auto draws = draw_1d(1.5, n, 1);

    // Median of a symmetric law.
    CHECK(std::abs(quantile(draws, 0.5)) < 0.01);

    // E cos(X) = exp(-1) under the scale convention, at h = 1.
    RunningStat ecf;
    for (double x : draws) ecf.add(std::cos(x));
    CHECK(std::abs(ecf.mean() - std::exp(-1.0)) <= 3.0 * ecf.stderror());

    // Hill estimator on the top 1% order statistics recovers alpha.
    const double hill = hill_tail_index(draws, 0.01);
    CHECK(hill == doctest::Approx(1.5).epsilon(0.1 / 1.5));
}

TEST_CASE("characteristic function across alpha and frequencies") {
    for (double alpha : {1.2, 1.5, 1.8}) {
        const auto draws = draw_1d(alpha, 400000, std::uint16_t(10 * alpha));
        for (double h : {0.5, 1.0, 2.0}) {
            RunningStat acc;
            for (double x : draws) acc.add(std::cos(h * x));
            const double target = std::exp(-std::pow(h, alpha));
            INFO("alpha=", alpha, " h=", h);
            CHECK(std::abs(acc.mean() - target) <= 4.0 * acc.stderror());
        }
    }
}

TEST_CASE("subordinator: Laplace transform, self-similarity, positivity") {
    const double alpha = 1.5;
    const long n = 1000000;
    Philox rng(test_stream(2));
    RunningStat lap;
    bool all_positive = true;
    std::vector<double> s1(static_cast<std::size_t>(n / 10)),
        s2(static_cast<std::size_t>(n / 10));
    for (long i = 0; i < n; ++i) {
        const double s = sample_subordinator_increment(alpha, 1.0, rng);
        if (!(s > 0.0)) all_positive = false;
        lap.add(std::exp(-s));
        if (i < n / 10) s1[std::size_t(i)] = s;
    }
    CHECK(all_positive);
    CHECK(std::abs(lap.mean() - std::exp(-1.0)) <= 3.0 * lap.stderror());

    // S(2) must match 2^{2/alpha} S(1) in law.
    Philox rng2(test_stream(3));
    const double boost = std::pow(2.0, 2.0 / alpha);
    for (auto& s : s2) s = sample_subordinator_increment(alpha, 2.0, rng2);
    std::vector<double> scaled(s1);
    for (auto& s : scaled) s *= boost;
    const double d = ks_statistic(scaled, s2);
    CHECK(d < ks_critical(scaled.size(), s2.size(), 0.01));
}

TEST_CASE("isotropic dim=1 agrees with the CMS construction") {
    const double alpha = 1.5;
    const StableSpec spec(alpha, 1);
    const long n = 100000;
    Philox rng(test_stream(4));
    std::vector<double> iso(static_cast<std::size_t>(n));
    std::vector<double> v(1);
    for (auto& x : iso) {
        sample_isotropic_increment(spec, 1.0, rng, v);
        x = v[0];
    }
    const auto cms = draw_1d(alpha, n, 5);
    CHECK(ks_statistic(iso, cms) < ks_critical(iso.size(), cms.size(), 0.01));
}

TEST_CASE("isotropy: E cos<h,X> independent of direction at |h|=1") {
    const StableSpec spec(1.5, 2);
    const long n = 1000000;
    Philox rng(test_stream(6));
    RunningStat along_x, diagonal;
    std::vector<double> v(2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (long i = 0; i < n; ++i) {
        sample_isotropic_increment(spec, 1.0, rng, v);
        along_x.add(std::cos(v[0]));
        diagonal.add(std::cos(inv_sqrt2 * (v[0] + v[1])));
    }
    const double gap = std::abs(along_x.mean() - diagonal.mean());
    const double noise = std::sqrt(along_x.stderror() * along_x.stderror() +
                                   diagonal.stderror() * diagonal.stderror());
    CHECK(gap <= 3.0 * noise);
    // And both match the transform value exp(-1).
    CHECK(std::abs(along_x.mean() - std::exp(-1.0)) <=
          3.0 * along_x.stderror());
}

TEST_CASE("self-similarity of increments: dt=0.25 vs scaled dt=1, dim=2") {
    const double alpha = 1.5;
    const StableSpec spec(alpha, 2);
    const long n = 200000;
    Philox rng(test_stream(7));
    RunningStat small_dt, unit_dt;
    std::vector<double> v(2);
    for (long i = 0; i < n; ++i) {
        sample_isotropic_increment(spec, 0.25, rng, v);
        small_dt.add(std::hypot(v[0], v[1]));
        sample_isotropic_increment(spec, 1.0, rng, v);
        unit_dt.add(std::hypot(v[0], v[1]));
    }
    // Moment-ratio check for p = 1: E|X_{0.25}| = 0.25^{1/alpha} E|X_1|.
    const double measured = small_dt.mean() / unit_dt.mean();
    const double target = std::pow(0.25, 1.0 / alpha);
    CHECK(measured == doctest::Approx(target).epsilon(0.03));
}

TEST_CASE("grid increments: domain, determinism, independence") {
    const StableSpec spec(1.5, 1);
    CHECK_THROWS_AS(increments_on_grid(spec, 0, 0.1, test_stream(8)),
                    DomainError);
    CHECK_THROWS_AS(increments_on_grid(spec, 5, 0.0, test_stream(8)),
                    DomainError);
    CHECK(increments_on_grid(spec, 1, 0.1, test_stream(8)).size() == 1);

    const auto a = increments_on_grid(spec, 1000, 0.1, test_stream(9));
    const auto b = increments_on_grid(spec, 1000, 0.1, test_stream(9));
    CHECK(a == b);  // bitwise

    // Lag-one sign correlation over one long stream.
    const auto big = increments_on_grid(spec, 1000000, 0.1, test_stream(10));
    RunningStat corr;
    for (std::size_t k = 0; k + 1 < big.size(); ++k)
        corr.add((big[k] > 0 ? 1.0 : -1.0) * (big[k + 1] > 0 ? 1.0 : -1.0));
    CHECK(std::abs(corr.mean()) <= 3.0 * corr.stderror() + 1e-12);
}

TEST_CASE("self-similarity property: KS of step c*h vs scaled step h") {
    const double alpha = 1.5, c = 4.0, h = 0.05;
    const StableSpec spec(alpha, 1);
    auto коarse = increments_on_grid(spec, 100000, c * h, test_stream(11));
    auto fine = increments_on_grid(spec, 100000, h, test_stream(12));
    for (auto& x : fine) x *= std::pow(c, 1.0 / alpha);
    CHECK(ks_statistic(коarse, fine) <
          ks_critical(коarse.size(), fine.size(), 0.01));
}

TEST_CASE("symmetry property: X and -X have equal empirical laws") {
    auto draws = draw_1d(1.5, 100000, 13);
    std::vector<double> neg(draws);
    for (auto& x : neg) x = -x;
    CHECK(ks_statistic(draws, neg) < ks_critical(draws.size(), neg.size(), 0.01));
}

TEST_CASE("heavy tails: p=1 moment stabilizes, second moment diverges") {
    const auto draws = draw_1d(1.5, 1000000, 14);
    RunningStat m1;
    double m1_at_prefix = 0.0;
    double m2_prefix[4] = {0, 0, 0, 0};
    double acc2 = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        m1.add(std::abs(draws[i]));
        acc2 += draws[i] * draws[i];
        if (i + 1 == 100000) m1_at_prefix = m1.mean();
        if (i + 1 == 1000) m2_prefix[0] = acc2 / 1e3;
        if (i + 1 == 10000) m2_prefix[1] = acc2 / 1e4;
        if (i + 1 == 100000) m2_prefix[2] = acc2 / 1e5;
        if (i + 1 == 1000000) m2_prefix[3] = acc2 / 1e6;
    }
    // Running mean of |X| stabilizes between N=1e5 and N=1e6.
    CHECK(std::abs(m1.mean() - m1_at_prefix) / m1.mean() < 0.05);
    // Empirical second moment keeps growing with the sample size.
    CHECK(m2_prefix[0] < m2_prefix[3]);
    CHECK(m2_prefix[1] < m2_prefix[3]);
    CHECK(m2_prefix[2] < m2_prefix[3]);
}
