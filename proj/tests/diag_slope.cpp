// Calibration scratch: exact-OU measurement of E sup_{t<=1} |Z^eps_t| and
// E |Z^eps_1| over the acceptance eps grid, against sigma(eps,1).
#include <cstdio>
#include <vector>

#include "engine.hpp"
#include "oracle.hpp"
#include "rates.hpp"

using namespace stablefast;

int main(int argc, char** argv) {
    const double alpha = 1.5;
    const long n_paths = argc > 1 ? atol(argv[1]) : 20000;
    const double h_div = argc > 2 ? atof(argv[2]) : 50.0;
    std::vector<RateCurvePoint> sup_curve, end_curve;
    for (int k = 3; k <= 8; ++k) {
        const double eps = std::pow(2.0, -k);
        const TimeGrid grid =
            TimeGrid::from_step(eps / h_div, std::lround(h_div / eps));
        EnsembleStat sup_stat = ensemble_mc(
            [&](RngStream rs) {
                const Path y = exact_ou_path(alpha, eps, grid, rs);
                double z = 0.0, sup = 0.0;
                for (long j = 0; j < grid.n_steps; ++j) {
                    z += 0.5 * (y.scalar(j) + y.scalar(j + 1)) * grid.h;
                    sup = std::max(sup, std::abs(z));
                }
                return sup;
            },
            n_paths, substream(RngStream{777, 0}, std::uint16_t(k), 0, 0), 2);
        EnsembleStat end_stat = ensemble_mc(
            [&](RngStream rs) {
                const Path y = exact_ou_path(alpha, eps, grid, rs);
                double z = 0.0;
                for (long j = 0; j < grid.n_steps; ++j)
                    z += 0.5 * (y.scalar(j) + y.scalar(j + 1)) * grid.h;
                return std::abs(z);
            },
            n_paths, substream(RngStream{777, 0}, std::uint16_t(k), 0, 0), 2);
        const double sigma = sigma_scale(OracleParams(alpha, eps, 1.0, 1.0));
        std::printf(
            "eps=2^-%d  Esup=%.5f+-%.5f  Eend=%.5f+-%.5f  sigma=%.5f  "
            "end/sigma=%.4f  sup/end=%.4f\n",
            k, sup_stat.mean, sup_stat.stderror, end_stat.mean,
            end_stat.stderror, sigma, end_stat.mean / sigma,
            sup_stat.mean / end_stat.mean);
        RateCurvePoint p;
        p.eps = eps;
        p.error = sup_stat.mean;
        p.stderror = sup_stat.stderror;
        sup_curve.push_back(p);
        p.error = end_stat.mean;
        p.stderror = end_stat.stderror;
        end_curve.push_back(p);
    }
    RateFit fs = fit_loglog(sup_curve, 1000);
    RateFit fe = fit_loglog(end_curve, 1000);
    std::printf("sup slope  %.4f  CI [%.4f, %.4f]\n", fs.slope, fs.ci_low,
                fs.ci_high);
    std::printf("end slope  %.4f  CI [%.4f, %.4f]\n", fe.slope, fe.ci_low,
                fe.ci_high);
    return 0;
}
