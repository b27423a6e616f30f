#include "oracle.hpp"

#include <cmath>

#include "engine.hpp"

namespace stablefast {

namespace {

// Adaptive Simpson with the tolerance budget split per interval.
double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

struct Integrand {
    double alpha;
    double eps;
};

double integrand_eval(double r, const void* ctx) {
    const auto* p = static_cast<const Integrand*>(ctx);
    return std::pow(1.0 - std::exp(-r / p->eps), p->alpha);
}

double adaptive(double (*f)(double, const void*), const void* ctx, double a,
                double b, double fa, double fm, double fb, double whole,
                double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm, ctx), frm = f(rm, ctx);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive(f, ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive(f, ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(double (*f)(double, const void*), const void* ctx, double a,
                 double b, double rel_tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a, ctx), fm = f(m, ctx), fb = f(b, ctx);
    const double whole = simpson(a, b, fa, fm, fb);
    const double tol = std::max(std::abs(whole), 1e-300) * rel_tol;
    return adaptive(f, ctx, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double sigma_scale(const OracleParams& params) {
    const Integrand ctx{params.alpha, params.eps};
    const double inner =
        integrate(integrand_eval, &ctx, 0.0, params.t, 1e-9);
    return std::pow(params.eps, 1.0 - 1.0 / params.alpha) *
           std::pow(inner, 1.0 / params.alpha);
}

double stationary_ou_scale(double alpha, double c) {
    if (!(c > 0.0)) throw DomainError("stationary_ou_scale: c must be > 0");
    return std::pow(1.0 / (c * alpha), 1.0 / alpha);
}

double exact_ou_step_scale(double alpha, double eps, double h) {
    return std::pow((1.0 - std::exp(-alpha * h / eps)) / alpha, 1.0 / alpha);
}

Path exact_ou_path(double alpha, double eps, TimeGrid grid, RngStream rs) {
    if (!(eps > 0.0)) throw DomainError("exact_ou_path: eps must be > 0");
    Philox rng(rs);
    const double decay = std::exp(-grid.h / eps);
    const double scale = exact_ou_step_scale(alpha, eps, grid.h);
    Path path(grid, 1);
    double y = 0.0;
    for (long k = 0; k < grid.n_steps; ++k) {
        y = decay * y + scale * sample_sym_stable_1d(alpha, rng);
        path.node(k + 1)[0] = y;
    }
    return path;
}

OracleMomentResult oracle_moment_check(double alpha, double p, double t,
                                       std::span<const double> eps_list,
                                       long n_paths, RngStream base,
                                       int workers) {
    if (!(p >= 1.0 && p < alpha))
        throw DomainError("oracle_moment_check: p in [1,alpha) required");
    OracleMomentResult result;
    for (std::size_t j = 0; j < eps_list.size(); ++j) {
        const double eps = eps_list[j];
        const OracleParams params(alpha, eps, t, p);
        const double sigma_p = std::pow(sigma_scale(params), p);
        // h <= eps/20, landing exactly on t.
        const long n_steps = long(std::ceil(t / (eps / 20.0)));
        const TimeGrid grid = TimeGrid::from_horizon(t, n_steps);
        const RngStream point_base = substream(base, 1, std::uint16_t(j), 0);
        EnsembleStat stat = ensemble_mc(
            [&](RngStream rs) {
                const Path y = exact_ou_path(alpha, eps, grid, rs);
                double z = 0.0;
                for (long k = 0; k < grid.n_steps; ++k)
                    z += 0.5 * (y.scalar(k) + y.scalar(k + 1)) * grid.h;
                return std::pow(std::abs(z), p);
            },
            n_paths, point_base, workers);
        MomentRatioPoint pt;
        pt.eps = eps;
        pt.moment = stat.mean;
        pt.moment_stderror = stat.stderror;
        pt.ratio = stat.mean / sigma_p;
        pt.stderror = stat.stderror / sigma_p;
        result.points.push_back(pt);
    }
    EnsembleStat direct = ensemble_mc(
        [&](RngStream rs) {
            return std::pow(std::abs(sample_sym_stable_1d(alpha, rs)), p);
        },
        n_paths, substream(base, 2, 0, 0), workers);
    result.c_direct = direct.mean;
    result.c_direct_stderror = direct.stderror;
    return result;
}

}  // namespace stablefast
