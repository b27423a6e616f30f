#pragma once

#include <functional>
#include <vector>

#include "averaging.hpp"
#include "multiscale.hpp"

namespace stablefast {

// Frame for a strong- or weak-rate experiment over a geometric eps grid.
struct RateExperiment {
    const SlowFastSystem* system = nullptr;
    BbarProvider bbar;
    std::vector<double> eps_list;   // strictly decreasing, >= 4 points
    double p = 1.0;                 // strong mode exponent, in [1, alpha)
    double T = 1.0;
    std::function<double(std::span<const double>)> phi;  // weak mode
    long n_paths = 0;
    double h_rule = 50.0;           // h = eps / h_rule
    std::vector<double> x0;
    std::vector<double> y0;

    void validate(bool strong_mode) const;
};

struct RateCurvePoint {
    double eps = 0.0;
    double error = 0.0;
    double stderror = 0.0;
    long n_paths = 0;
    double h = 0.0;
    bool excluded = false;  // set by the 3-stderr rule (weak mode)
};

// E[sup_{t<=T} |X^eps_t - Xbar_t|^p] per eps under synchronous coupling:
// the same slow-noise increments drive X^eps and Xbar on the same grid.
std::vector<RateCurvePoint> strong_error_curve(const RateExperiment& exp,
                                               RngStream rs, int workers = 1);

// |E phi(X^eps_t) - E phi(Xbar_t)| per eps via the paired-difference
// estimator (shared slow noise; the difference of expectations is
// unchanged). Points whose error is below 3 stderr are flagged excluded.
std::vector<RateCurvePoint> weak_error_curve(const RateExperiment& exp,
                                             double t_eval, RngStream rs,
                                             int workers = 1);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::vector<int> excluded_points;
};

// OLS on (ln eps, ln error) with a pairs bootstrap CI. Points flagged
// excluded, with non-positive error, or with stderr > 20% of error are
// dropped; DegenerateFitError if fewer than 4 remain.
RateFit fit_loglog(std::span<const RateCurvePoint> curve, int n_bootstrap,
                   RngStream rs = RngStream{0x9E3779B97F4A7C15ull, 0});

}  // namespace stablefast
