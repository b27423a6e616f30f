// Coverage of fit_loglog CI variants on the synthetic curve
// error = eps^{1/3} (1 + N(0, 0.05)), 6-point grid.
#include <cstdio>
#include <vector>

#include "rates.hpp"

using namespace stablefast;

int main() {
    const int reps = 400;
    int cover = 0, cover_in_box = 0;
    Philox noise(RngStream{2024, 0});
    std::vector<double> widths;
    for (int r = 0; r < reps; ++r) {
        std::vector<RateCurvePoint> curve;
        for (int k = 3; k <= 8; ++k) {
            const double eps = std::pow(2.0, -k);
            RateCurvePoint p;
            p.eps = eps;
            p.error = std::pow(eps, 1.0 / 3.0) *
                      (1.0 + 0.05 * noise.gaussian());
            p.stderror = 0.05 * p.error;
            curve.push_back(p);
        }
        RateFit fit = fit_loglog(curve, 1000,
                                 RngStream{99, std::uint64_t(r)});
        if (fit.ci_low <= 1.0 / 3.0 && 1.0 / 3.0 <= fit.ci_high) ++cover;
        widths.push_back(fit.ci_high - fit.ci_low);
    }
    std::printf("coverage %d/%d = %.3f, median width %.4f\n", cover, reps,
                double(cover) / reps, quantile(widths, 0.5));
    (void)cover_in_box;
    return 0;
}
