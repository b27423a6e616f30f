#include "stats.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace stablefast {

double RunningStat::stddev() const { return std::sqrt(variance()); }

double RunningStat::stderror() const {
    if (n_ < 2) throw DomainError("stderr needs at least 2 samples");
    return stddev() / std::sqrt(double(n_));
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw DomainError("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = double(a.size()), nb = double(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / na - double(j) / nb));
    }
    return d;
}

double ks_critical(std::size_t n1, std::size_t n2, double level) {
    if (!(level > 0.0 && level < 1.0))
        throw DomainError("ks_critical: level in (0,1) required");
    const double c = std::sqrt(-0.5 * std::log(level / 2.0));
    return c * std::sqrt(double(n1 + n2) / (double(n1) * double(n2)));
}

double hill_tail_index(std::span<const double> sample, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw DomainError("hill_tail_index: fraction in (0,1) required");
    std::vector<double> mag(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) mag[i] = std::abs(sample[i]);
    std::sort(mag.begin(), mag.end(), std::greater<>());
    const std::size_t k = std::max<std::size_t>(
        2, std::size_t(fraction * double(sample.size())));
    if (k + 1 >= mag.size())
        throw DomainError("hill_tail_index: sample too small for fraction");
    const double ref = std::log(mag[k]);
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += std::log(mag[i]) - ref;
    return double(k) / s;
}

LineFit ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("ols: need >= 2 matching points");
    const double n = double(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("ols: degenerate x values");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw DomainError("quantile: empty sample");
    std::sort(v.begin(), v.end());
    const double pos = q * double(v.size() - 1);
    const std::size_t lo = std::size_t(pos);
    if (lo + 1 >= v.size()) return v.back();
    const double w = pos - double(lo);
    return v[lo] * (1.0 - w) + v[lo + 1] * w;
}

}  // namespace stablefast
