#pragma once

#include <span>
#include <vector>

#include "rng.hpp"

namespace stablefast {

// Running mean/variance (Welford). Accumulation order is fixed by the caller,
// which is what makes ensemble reductions bit-reproducible.
class RunningStat {
  public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / double(n_);
        m2_ += d * (x - mean_);
    }
    long count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / double(n_ - 1) : 0.0; }
    double stddev() const;
    double stderror() const;  // sample std / sqrt(n)

  private:
    long n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Two-sample Kolmogorov-Smirnov statistic; inputs need not be sorted.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Critical value of the two-sample KS statistic at significance level
// `level`, c(level) * sqrt((n1+n2)/(n1*n2)) with c = sqrt(-ln(level/2)/2).
double ks_critical(std::size_t n1, std::size_t n2, double level);

// Hill estimator of the tail index from the top `fraction` order statistics
// of |sample|.
double hill_tail_index(std::span<const double> sample, double fraction);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares of y against x.
LineFit ols(std::span<const double> x, std::span<const double> y);

// q-quantile (linear interpolation) of an unsorted copy of v.
double quantile(std::vector<double> v, double q);

}  // namespace stablefast
