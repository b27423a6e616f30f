#include "poisson.hpp"

#include <algorithm>
#include <cmath>

namespace stablefast {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double truncation_horizon(double beta, double y_norm, double tol) {
    if (!(beta > 0.0))
        throw DomainError("corrector: requires beta > 0");
    if (!(tol > 0.0)) throw DomainError("corrector: tol must be > 0");
    const double t = 2.0 / beta * std::log((1.0 + y_norm) / tol);
    return std::max(t, 4.0 / beta);
}

struct QuadGrid {
    TimeGrid grid;
    double t_star;
};

QuadGrid corrector_grid(const CorrectorSetup& setup, double y_norm,
                        double tol) {
    const double t_star = truncation_horizon(setup.beta, y_norm, tol);
    double h = setup.quad_step_frac / setup.beta;
    h = std::min(h, 1.0 / (20.0 * setup.beta));
    const long n = long(std::ceil(t_star / h));
    return {TimeGrid::from_step(h, n), double(n) * h};
}

// Per-path trapezoid of b(x, Y_t) - bbar(x) over [0, n_steps h] for one
// frozen trajectory; optionally reports the endpoint state and the endpoint
// drift value.
struct PathIntegral {
    std::vector<double> integral;   // d1
    std::vector<double> endpoint;   // d2
    std::vector<double> b_end;      // d1
};

PathIntegral integrate_centered_drift(const CorrectorSetup& setup,
                                      std::span<const double> x,
                                      std::span<const double> y,
                                      std::span<const double> bbar_x,
                                      TimeGrid grid, Philox& rng) {
    const int d1 = setup.b.out_dim;
    const int d2 = setup.f.dy;
    PathIntegral out;
    out.integral.assign(std::size_t(d1), 0.0);
    out.endpoint.assign(y.begin(), y.end());
    out.b_end.assign(std::size_t(d1), 0.0);

    const StableSpec noise(setup.alpha, d2);
    std::vector<double> fv(static_cast<std::size_t>(d2)), dl(static_cast<std::size_t>(d2)),
        bv(static_cast<std::size_t>(d1));
    auto add_weighted = [&](double w) {
        setup.b(x, out.endpoint, bv);
        for (int i = 0; i < d1; ++i)
            out.integral[std::size_t(i)] +=
                w * (bv[std::size_t(i)] - bbar_x[std::size_t(i)]);
    };
    add_weighted(0.5 * grid.h);
    for (long k = 0; k < grid.n_steps; ++k) {
        setup.f(x, out.endpoint, fv);
        sample_isotropic_increment(noise, grid.h, rng, dl);
        for (int i = 0; i < d2; ++i)
            out.endpoint[std::size_t(i)] =
                (out.endpoint[std::size_t(i)] + fv[std::size_t(i)] * grid.h) +
                dl[std::size_t(i)];
        for (int i = 0; i < d2; ++i)
            if (!std::isfinite(out.endpoint[std::size_t(i)]))
                throw NonFiniteError("corrector: frozen path blew up");
        add_weighted(k + 1 == grid.n_steps ? 0.5 * grid.h : grid.h);
    }
    out.b_end = bv;
    return out;
}

}  // namespace

PoissonSolution phi_estimate(const CorrectorSetup& setup,
                             std::span<const double> x,
                             std::span<const double> y, double tol,
                             long n_paths, RngStream rs, int workers) {
    const int d1 = setup.b.out_dim;
    const QuadGrid qg = corrector_grid(setup, norm2(y), tol);
    std::vector<double> bbar_x(static_cast<std::size_t>(d1));
    setup.bbar(x, bbar_x);

    // Row layout: d1 integrals followed by d1 endpoint drift values.
    VectorEnsembleStat stat = ensemble_mc_vector(
        [&](RngStream prs, std::span<double> row) {
            Philox rng(prs);
            PathIntegral pi = integrate_centered_drift(setup, x, y, bbar_x,
                                                       qg.grid, rng);
            for (int i = 0; i < d1; ++i) {
                row[std::size_t(i)] = pi.integral[std::size_t(i)];
                row[std::size_t(d1 + i)] = pi.b_end[std::size_t(i)];
            }
        },
        2 * d1, n_paths, rs, workers);

    // Centering check at T_star, up to the Monte Carlo noise of the tail
    // estimate itself.
    for (int i = 0; i < d1; ++i) {
        const double tail = std::abs(stat.mean[std::size_t(d1 + i)] -
                                     bbar_x[std::size_t(i)]);
        if (tail > tol + 3.0 * stat.stderror[std::size_t(d1 + i)])
            throw TruncationError(
                "phi_estimate: integrand at T_star exceeds tol (" +
                std::to_string(tail) + " > " + std::to_string(tol) + ")");
    }

    PoissonSolution sol;
    sol.x.assign(x.begin(), x.end());
    sol.y.assign(y.begin(), y.end());
    sol.t_star = qg.t_star;
    sol.n_paths = n_paths;
    sol.value.assign(stat.mean.begin(), stat.mean.begin() + d1);
    sol.stderr_components.assign(stat.stderror.begin(),
                                 stat.stderror.begin() + d1);
    sol.stderror = *std::max_element(sol.stderr_components.begin(),
                                     sol.stderr_components.end());
    return sol;
}

DynkinResidual dynkin_residual(const CorrectorSetup& setup,
                               std::span<const double> x,
                               std::span<const double> y, double t,
                               const PoissonSolution& phi, double tol, long n,
                               RngStream rs, int workers) {
    const int d1 = setup.b.out_dim;
    if (t > phi.t_star / 2.0 + 1e-12)
        throw DomainError("dynkin_residual: t must be <= T_star/2");
    std::vector<double> bbar_x(static_cast<std::size_t>(d1));
    setup.bbar(x, bbar_x);

    const double h = std::min(setup.quad_step_frac / setup.beta,
                              1.0 / (20.0 * setup.beta));
    const long m = std::max<long>(1, std::lround(t / h));
    const TimeGrid leg = TimeGrid::from_step(h, m);

    // Per outer path: q_i = int_0^t (b - bbar), then a fresh single-path
    // integral from the endpoint on an independent child stream. Their sum
    // is an unbiased draw of Phi(x,y) by the Markov property.
    VectorEnsembleStat stat = ensemble_mc_vector(
        [&](RngStream prs, std::span<double> row) {
            Philox rng(prs);
            PathIntegral leg_part =
                integrate_centered_drift(setup, x, y, bbar_x, leg, rng);
            const QuadGrid inner =
                corrector_grid(setup, norm2(leg_part.endpoint), tol);
            // Child stream: tag blocks never set the top bit, so flipping it
            // yields an id disjoint from every ensemble stream.
            Philox inner_rng(
                RngStream{prs.seed, prs.stream ^ 0x8000000000000000ull});
            PathIntegral tail_part = integrate_centered_drift(
                setup, x, leg_part.endpoint, bbar_x, inner.grid, inner_rng);
            for (int i = 0; i < d1; ++i)
                row[std::size_t(i)] = leg_part.integral[std::size_t(i)] +
                                      tail_part.integral[std::size_t(i)];
        },
        d1, n, rs, workers);

    DynkinResidual out;
    int argmax = 0;
    for (int i = 0; i < d1; ++i) {
        const double res =
            std::abs(phi.value[std::size_t(i)] - stat.mean[std::size_t(i)]);
        out.components.push_back(res);
        if (res > out.components[std::size_t(argmax)]) argmax = i;
    }
    out.residual = out.components[std::size_t(argmax)];
    out.combined_stderror = std::sqrt(
        phi.stderr_components[std::size_t(argmax)] *
            phi.stderr_components[std::size_t(argmax)] +
        stat.stderror[std::size_t(argmax)] * stat.stderror[std::size_t(argmax)]);
    return out;
}

GrowthProbe phi_growth_probe(const CorrectorSetup& setup,
                             std::span<const double> x,
                             std::span<const double> y_magnitudes, double tol,
                             long n, RngStream rs, int workers) {
    const int d2 = setup.f.dy;
    GrowthProbe probe;
    for (std::size_t j = 0; j < y_magnitudes.size(); ++j) {
        std::vector<double> y(std::size_t(d2), 0.0);
        y[0] = y_magnitudes[j];
        // Shared stream across magnitudes: common random numbers keep the
        // scan smooth.
        PoissonSolution sol = phi_estimate(setup, x, y, tol, n, rs, workers);
        probe.magnitudes.push_back(y_magnitudes[j]);
        probe.phi_norm.push_back(norm2(sol.value));
        probe.stderror.push_back(sol.stderror);
    }
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < probe.magnitudes.size(); ++j)
        if (probe.phi_norm[j] > 3.0 * probe.stderror[j]) {
            lx.push_back(std::log(probe.magnitudes[j]));
            ly.push_back(std::log(probe.phi_norm[j]));
        }
    if (lx.size() < 2) {
        probe.degenerate = true;  // zero corrector within noise
        return probe;
    }
    probe.exponent = ols(lx, ly).slope;
    return probe;
}

GradientProbe phi_gradient_probe(const CorrectorSetup& setup,
                                 std::span<const double> x,
                                 std::span<const double> y, ProbeAxis axis,
                                 int coordinate, double tol, long n,
                                 RngStream rs, int workers) {
    const int d1 = setup.b.out_dim;
    const double step = 1e-2 * (1.0 + norm2(y));
    std::vector<double> x_hi(x.begin(), x.end()), x_lo(x.begin(), x.end());
    std::vector<double> y_hi(y.begin(), y.end()), y_lo(y.begin(), y.end());
    if (axis == ProbeAxis::X) {
        x_hi[std::size_t(coordinate)] += step;
        x_lo[std::size_t(coordinate)] -= step;
    } else {
        y_hi[std::size_t(coordinate)] += step;
        y_lo[std::size_t(coordinate)] -= step;
    }
    std::vector<double> bbar_hi(static_cast<std::size_t>(d1)), bbar_lo(static_cast<std::size_t>(d1));
    setup.bbar(x_hi, bbar_hi);
    setup.bbar(x_lo, bbar_lo);

    // Both evaluation points consume the same noise streams and share one
    // truncation horizon, so the per-path differences carry the coupling.
    const QuadGrid qg =
        corrector_grid(setup, std::max(norm2(y_hi), norm2(y_lo)), tol);

    VectorEnsembleStat stat = ensemble_mc_vector(
        [&](RngStream prs, std::span<double> row) {
            Philox rng_hi(prs), rng_lo(prs);
            PathIntegral hi = integrate_centered_drift(setup, x_hi, y_hi,
                                                       bbar_hi, qg.grid,
                                                       rng_hi);
            PathIntegral lo = integrate_centered_drift(setup, x_lo, y_lo,
                                                       bbar_lo, qg.grid,
                                                       rng_lo);
            for (int i = 0; i < d1; ++i)
                row[std::size_t(i)] = (hi.integral[std::size_t(i)] -
                                       lo.integral[std::size_t(i)]) /
                                      (2.0 * step);
        },
        d1, n, rs, workers);

    GradientProbe probe;
    probe.step = step;
    probe.derivative = stat.mean;
    probe.stderror = stat.max_stderror();
    // Noise-floor guard: the central difference must exceed its own noise.
    double diff_norm = 0.0, diff_noise = 0.0;
    for (int i = 0; i < d1; ++i) {
        diff_norm += stat.mean[std::size_t(i)] * stat.mean[std::size_t(i)];
        diff_noise +=
            stat.stderror[std::size_t(i)] * stat.stderror[std::size_t(i)];
    }
    if (std::sqrt(diff_noise) > 0.5 * std::sqrt(diff_norm) &&
        std::sqrt(diff_noise) > 0.0)
        throw StepTooSmallError(
            "phi_gradient_probe: difference below the noise floor");
    return probe;
}

HoelderProbe phi_x_hoelder_probe(const CorrectorSetup& setup,
                                 std::span<const double> x,
                                 std::span<const double> y, double tol, long n,
                                 RngStream rs, int workers) {
    HoelderProbe probe;
    GradientProbe base =
        phi_gradient_probe(setup, x, y, ProbeAxis::X, 0, tol, n, rs, workers);
    for (int k = 1; k <= 6; ++k) {
        const double sep = std::pow(2.0, -k);
        std::vector<double> x2(x.begin(), x.end());
        x2[0] += sep;
        GradientProbe moved = phi_gradient_probe(setup, x2, y, ProbeAxis::X, 0,
                                                 tol, n, rs, workers);
        double inc = 0.0;
        for (std::size_t i = 0; i < base.derivative.size(); ++i) {
            const double d = moved.derivative[i] - base.derivative[i];
            inc += d * d;
        }
        probe.separations.push_back(sep);
        probe.increments.push_back(std::sqrt(inc));
    }
    std::vector<double> lx, ly;
    const double noise = 3.0 * std::sqrt(2.0) * base.stderror;
    for (std::size_t j = 0; j < probe.separations.size(); ++j)
        if (probe.increments[j] > noise) {
            lx.push_back(std::log(probe.separations[j]));
            ly.push_back(std::log(probe.increments[j]));
        }
    if (lx.size() < 2) {
        probe.degenerate = true;
        return probe;
    }
    probe.exponent = ols(lx, ly).slope;
    return probe;
}

}  // namespace stablefast
