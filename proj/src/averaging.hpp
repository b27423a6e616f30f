#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "drift.hpp"
#include "engine.hpp"
#include "stable.hpp"

namespace stablefast {

// Fast dynamics with the slow state frozen: dY = f(x,Y) dt + dL^2.
// beta = 0 is allowed (pure-noise scaling studies); the ergodic operations
// below require beta > 0 and say so.
struct FrozenSpec {
    std::vector<double> x;
    PairField f;
    StableSpec noise;
    double beta;

    FrozenSpec(std::vector<double> x_, PairField f_, double alpha,
               double beta_);

    int dim() const { return f.dy; }
};

// Euler path of the frozen equation; pre: h <= 1/(20 beta) when beta > 0.
Path simulate_frozen(const FrozenSpec& spec, std::span<const double> y0,
                     TimeGrid grid, RngStream rs);

// Post-burn-in samples approximating mu^x, decorrelated by `spacing`.
struct InvariantMeasureEstimate {
    std::vector<double> x;
    std::vector<double> samples;  // n x d2 row-major
    long n = 0;
    int dim = 0;
    double burn_in = 0.0;
    double spacing = 0.0;

    double functional_mean(const std::function<double(std::span<const double>)>&
                               g) const;
};

// Long-path sampler: burn_in >= 10/beta and spacing >= 1/beta by default
// (pass 0 to take the defaults).
InvariantMeasureEstimate invariant_samples(const FrozenSpec& spec,
                                           std::span<const double> y0, long n,
                                           double burn_in, double spacing,
                                           RngStream rs);

// |Y^1_t - Y^2_t| under synchronous coupling, one realization plus the
// ensemble mean over n_paths replicas.
struct DecayCurve {
    std::vector<double> t;
    std::vector<double> single;
    std::vector<double> ensemble_mean;
};

DecayCurve contraction_check(const FrozenSpec& spec,
                             std::span<const double> y1,
                             std::span<const double> y2,
                             const std::vector<double>* x_alt, double T,
                             long n_paths, RngStream rs, int workers = 1);

// Time-average of b(x, Y_t) over [burn_in, T], averaged over n_reps
// independent replicas: estimates bbar(x) = int b(x,y) mu^x(dy).
VectorEnsembleStat ergodic_average_bbar(const FrozenSpec& spec,
                                        const PairField& b, double T,
                                        double burn_in, long n_reps,
                                        RngStream rs, int workers = 1);

// |P_t g(y0) - mu(g)| at each requested time plus the fitted exponential
// decay rate. The plateau mu(g) is estimated at 4x the largest time.
struct ErgodicityDecay {
    std::vector<double> times;
    std::vector<double> gap;         // |Ehat g(Y_t) - mu_hat(g)|
    std::vector<double> stderror;    // stderr of Ehat g(Y_t)
    double mu_hat = 0.0;
    double mu_stderror = 0.0;
    double fitted_rate = 0.0;        // decay rate, >= 0
    int points_used = 0;
};

ErgodicityDecay ergodicity_decay(
    const FrozenSpec& spec,
    const std::function<double(std::span<const double>)>& g, double g_lipschitz,
    std::span<const double> y0, std::span<const double> times, long n,
    RngStream rs, int workers = 1);

// Averaged-drift provider: either an analytic field or an interpolated table.
struct BbarTable {
    std::vector<double> xs;       // sorted grid, d1 = 1
    std::vector<double> values;   // bbar at xs
    std::vector<double> stderrs;

    double interpolate(double x) const;  // InterpolationRangeError outside
    double max_stderror() const;
};

using BbarProvider = std::function<void(std::span<const double>,
                                        std::span<double>)>;

BbarProvider bbar_from_table(const BbarTable& table);

// Builds the table on a uniform grid (d1 = 1 tabulation).
BbarTable build_bbar_table(const FrozenSpec& frozen_template,
                           const PairField& b, double x_lo, double x_hi,
                           int n_points, double T, double burn_in, long n_reps,
                           RngStream rs, int workers = 1);

// Euler path of dXbar = bbar(Xbar) dt + dL^1 with provided slow noise.
Path simulate_averaged(const BbarProvider& bbar, int d1, TimeGrid grid,
                       std::span<const double> x0,
                       std::span<const double> slow_noise);

// Fitted slope of log E[sup_{[0,T]} |Y|^p] against log T over a geometric
// T_list, y0 = 0; expected p/alpha. Returns slope and per-T estimates.
struct MomentGrowthResult {
    std::vector<double> T;
    std::vector<EnsembleStat> sup_moment;
    double slope = 0.0;
};

MomentGrowthResult frozen_sup_moment_growth(const FrozenSpec& spec, double p,
                                            std::span<const double> T_list,
                                            long n_paths, double h,
                                            RngStream rs, int workers = 1);

// Memoized on-the-fly bbar estimation for d1 > 1, keyed by the quantized
// slow state. Values are idempotent per key; single writer per key.
class MemoizedBbar {
  public:
    MemoizedBbar(PairField f, PairField b, double alpha, double beta, double T,
                 double burn_in, long n_reps, RngStream rs);
    void operator()(std::span<const double> x, std::span<double> out);

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

}  // namespace stablefast
