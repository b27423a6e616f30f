#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "drift.hpp"
#include "engine.hpp"
#include "stable.hpp"

namespace stablefast {

// The coupled slow-fast system
//   dX = b(X,Y) dt + dL^1,    dY = (1/eps) f(X,Y) dt + eps^{-1/alpha} dL^2
// with independent isotropic alpha-stable drivers of the same index.
// Construction spot-checks the dissipativity condition
//   <f(x,y1)-f(x,y2), y1-y2> <= -beta |y1-y2|^2
// on 1000 seeded random triples and |f(x,0)| on a bounded random x sample.
struct SlowFastSystem {
    int d1;
    int d2;
    PairField b;
    PairField f;
    double beta;
    StableSpec noise1;
    StableSpec noise2;

    SlowFastSystem(int d1_, int d2_, PairField b_, PairField f_, double beta_,
                   double alpha);
};

// One simulation setup. The grid must resolve the fast scale: h <= eps/20.
struct MultiscaleRun {
    const SlowFastSystem* system;
    double epsilon;
    TimeGrid grid;
    std::vector<double> x0;
    std::vector<double> y0;

    MultiscaleRun(const SlowFastSystem& sys, double eps, TimeGrid g,
                  std::vector<double> x0_, std::vector<double> y0_);
};

// Euler step of the coupled pair. The fast noise is realized as
// eps^{-1/alpha} * (increment at step h), identical in law to an increment at
// effective fast time h/eps. `shared_slow_noise`, when given, supplies the
// dL^1 increments (n_steps x d1) used to couple X^eps with Xbar.
std::pair<Path, Path> simulate_slow_fast(
    const MultiscaleRun& run, RngStream rs,
    std::span<const double> shared_slow_noise = {});

// Two-sample KS statistic between the first coordinate of Y^eps at slow time
// t*eps and of the unit-eps comparison process at time t, with the slow
// feedback frozen at x_frozen (valid when b plays no role, e.g. b == 0).
// `f_tilde` substitutes the comparison drift (negative controls).
double rescaled_fast_law_check(const SlowFastSystem& sys, double eps, double t,
                               std::span<const double> x_frozen,
                               std::span<const double> y0, long n,
                               RngStream rs, int workers = 1,
                               const PairField* f_tilde = nullptr);

// E|Y^eps_t|^p at each requested slow time, one coupled ensemble.
std::vector<EnsembleStat> fast_moment_bound_scan(const MultiscaleRun& run,
                                                 double p,
                                                 std::span<const double> times,
                                                 long n_paths, RngStream rs,
                                                 int workers = 1);

}  // namespace stablefast
