#include "rates.hpp"

#include <algorithm>
#include <cmath>

namespace stablefast {

namespace {

// Per-eps coupled run: X^eps via the multiscale engine, Xbar via the averaged
// drift, both consuming the increments drawn for dL^1.
struct CoupledPaths {
    Path x_eps;
    Path x_bar;
};

CoupledPaths coupled_run(const RateExperiment& exp, double eps, TimeGrid grid,
                         RngStream rs) {
    const SlowFastSystem& sys = *exp.system;
    std::vector<double> slow_noise =
        increments_on_grid(sys.noise1, grid.n_steps, grid.h,
                           RngStream{rs.seed, rs.stream});
    MultiscaleRun run(sys, eps, grid, exp.x0, exp.y0);
    // The fast noise comes from a disjoint child stream (top bit flip).
    auto [px, py] = simulate_slow_fast(
        run, RngStream{rs.seed, rs.stream ^ 0x8000000000000000ull},
        slow_noise);
    (void)py;
    Path xbar = simulate_averaged(exp.bbar, sys.d1, grid, exp.x0, slow_noise);
    return {std::move(px), std::move(xbar)};
}

TimeGrid grid_for(const RateExperiment& exp, double eps, double horizon) {
    const double h = eps / exp.h_rule;
    const long n = std::max<long>(1, std::lround(horizon / h));
    return TimeGrid::from_step(h, n);
}

}  // namespace

void RateExperiment::validate(bool strong_mode) const {
    if (!system) throw DomainError("RateExperiment: system missing");
    if (eps_list.size() < 4)
        throw DomainError("RateExperiment: need >= 4 eps points");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw DomainError("RateExperiment: eps_list must strictly decrease");
    if (strong_mode && !(p >= 1.0 && p < system->noise1.alpha))
        throw DomainError("RateExperiment: p in [1, alpha) required");
    if (!strong_mode && !phi)
        throw DomainError("RateExperiment: weak mode needs a test function");
    if (!bbar) throw DomainError("RateExperiment: bbar provider missing");
    if (n_paths < 2) throw DomainError("RateExperiment: n_paths >= 2 required");
    if (!(h_rule >= 20.0))
        throw DomainError("RateExperiment: h_rule must be >= 20 (h <= eps/20)");
}

std::vector<RateCurvePoint> strong_error_curve(const RateExperiment& exp,
                                               RngStream rs, int workers) {
    exp.validate(true);
    std::vector<RateCurvePoint> curve;
    for (std::size_t j = 0; j < exp.eps_list.size(); ++j) {
        const double eps = exp.eps_list[j];
        const TimeGrid grid = grid_for(exp, eps, exp.T);
        EnsembleStat stat = ensemble_mc(
            [&](RngStream prs) {
                CoupledPaths cp = coupled_run(exp, eps, grid, prs);
                return sup_norm_error(cp.x_eps, cp.x_bar, exp.p);
            },
            exp.n_paths, substream(rs, 1, std::uint16_t(j), 0), workers);
        RateCurvePoint pt;
        pt.eps = eps;
        pt.error = stat.mean;
        pt.stderror = stat.stderror;
        pt.n_paths = exp.n_paths;
        pt.h = grid.h;
        curve.push_back(pt);
    }
    return curve;
}

std::vector<RateCurvePoint> weak_error_curve(const RateExperiment& exp,
                                             double t_eval, RngStream rs,
                                             int workers) {
    exp.validate(false);
    if (!(t_eval > 0.0 && t_eval <= exp.T + 1e-12))
        throw DomainError("weak_error_curve: t_eval must lie in (0, T]");
    std::vector<RateCurvePoint> curve;
    for (std::size_t j = 0; j < exp.eps_list.size(); ++j) {
        const double eps = exp.eps_list[j];
        const TimeGrid grid = grid_for(exp, eps, t_eval);
        EnsembleStat stat = ensemble_mc(
            [&](RngStream prs) {
                CoupledPaths cp = coupled_run(exp, eps, grid, prs);
                return exp.phi(cp.x_eps.node(grid.n_steps)) -
                       exp.phi(cp.x_bar.node(grid.n_steps));
            },
            exp.n_paths, substream(rs, 1, std::uint16_t(j), 0), workers);
        RateCurvePoint pt;
        pt.eps = eps;
        pt.error = std::abs(stat.mean);
        pt.stderror = stat.stderror;
        pt.n_paths = exp.n_paths;
        pt.h = grid.h;
        pt.excluded = pt.error < 3.0 * pt.stderror;
        curve.push_back(pt);
    }
    return curve;
}

RateFit fit_loglog(std::span<const RateCurvePoint> curve, int n_bootstrap,
                   RngStream rs) {
    std::vector<double> lx, ly;
    RateFit fit;
    for (std::size_t j = 0; j < curve.size(); ++j) {
        const auto& pt = curve[j];
        const bool noisy = pt.stderror > 0.2 * pt.error;
        if (pt.excluded || pt.error <= 0.0 || noisy) {
            fit.excluded_points.push_back(int(j));
            continue;
        }
        lx.push_back(std::log(pt.eps));
        ly.push_back(std::log(pt.error));
    }
    if (lx.size() < 4)
        throw DegenerateFitError(
            "fit_loglog: fewer than 4 usable points remain (" +
            std::to_string(lx.size()) + ")");
    const LineFit base = ols(lx, ly);
    fit.slope = base.slope;
    fit.intercept = base.intercept;
    fit.r_squared = base.r_squared;

    // Pairs bootstrap over the retained points.
    Philox rng(rs);
    const std::size_t n = lx.size();
    std::vector<double> bx(n), by(n), slopes;
    slopes.reserve(std::size_t(n_bootstrap));
    while (slopes.size() < std::size_t(n_bootstrap)) {
        bool distinct = false;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick =
                std::size_t(rng.next_u64() % std::uint64_t(n));
            bx[i] = lx[pick];
            by[i] = ly[pick];
            if (bx[i] != bx[0]) distinct = true;
        }
        if (!distinct) continue;  // refuse resamples with a single eps
        slopes.push_back(ols(bx, by).slope);
    }
    fit.ci_low = quantile(slopes, 0.025);
    fit.ci_high = quantile(slopes, 0.975);
    return fit;
}

}  // namespace stablefast
