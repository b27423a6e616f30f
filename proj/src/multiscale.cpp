#include "multiscale.hpp"

#include <algorithm>
#include <cmath>

namespace stablefast {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

SlowFastSystem::SlowFastSystem(int d1_, int d2_, PairField b_, PairField f_,
                               double beta_, double alpha)
    : d1(d1_), d2(d2_), b(std::move(b_)), f(std::move(f_)), beta(beta_),
      noise1(alpha, d1_), noise2(alpha, d2_) {
    if (!(beta > 0.0))
        throw DomainError("SlowFastSystem: beta must be > 0");
    if (b.dx != d1 || b.dy != d2 || b.out_dim != d1)
        throw DomainError("SlowFastSystem: b has wrong dimensions");
    if (f.dx != d1 || f.dy != d2 || f.out_dim != d2)
        throw DomainError("SlowFastSystem: f has wrong dimensions");

    // Construction-time spot checks on a fixed internal stream.
    Philox rng(RngStream{0x5FA57CDEull, 0});
    std::vector<double> x(static_cast<std::size_t>(d1)), y1(static_cast<std::size_t>(d2)),
        y2(static_cast<std::size_t>(d2)), f1(static_cast<std::size_t>(d2)), f2(static_cast<std::size_t>(d2));
    double sup_f_x0 = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        for (auto& v : x) v = 8.0 * (rng.uniform() - 0.5);
        for (auto& v : y1) v = 8.0 * (rng.uniform() - 0.5);
        for (auto& v : y2) v = 8.0 * (rng.uniform() - 0.5);
        f(x, y1, f1);
        f(x, y2, f2);
        double inner = 0.0, dist2 = 0.0;
        for (int i = 0; i < d2; ++i) {
            const double dy = y1[std::size_t(i)] - y2[std::size_t(i)];
            inner += (f1[std::size_t(i)] - f2[std::size_t(i)]) * dy;
            dist2 += dy * dy;
        }
        if (inner > -beta * dist2 + 1e-9 * (1.0 + dist2))
            throw DomainError(
                "SlowFastSystem: dissipativity check failed (beta too large "
                "for this f?)");
        std::fill(y1.begin(), y1.end(), 0.0);
        f(x, y1, f1);
        sup_f_x0 = std::max(sup_f_x0, norm2(f1));
        if (!std::isfinite(sup_f_x0))
            throw DomainError("SlowFastSystem: f(x,0) not finite");
    }
}

MultiscaleRun::MultiscaleRun(const SlowFastSystem& sys, double eps, TimeGrid g,
                             std::vector<double> x0_, std::vector<double> y0_)
    : system(&sys), epsilon(eps), grid(g), x0(std::move(x0_)),
      y0(std::move(y0_)) {
    if (!(eps > 0.0))
        throw DomainError("MultiscaleRun: epsilon must be > 0");
    if (int(x0.size()) != sys.d1 || int(y0.size()) != sys.d2)
        throw DomainError("MultiscaleRun: initial state dimension mismatch");
    if (grid.h > eps / 20.0 * (1.0 + 1e-12))
        throw StiffnessError("MultiscaleRun: h must satisfy h <= eps/20 (h=" +
                             std::to_string(grid.h) +
                             ", eps=" + std::to_string(eps) + ")");
}

std::pair<Path, Path> simulate_slow_fast(
    const MultiscaleRun& run, RngStream rs,
    std::span<const double> shared_slow_noise) {
    const SlowFastSystem& sys = *run.system;
    const TimeGrid& grid = run.grid;
    const int d1 = sys.d1, d2 = sys.d2;
    if (!shared_slow_noise.empty() &&
        shared_slow_noise.size() != std::size_t(grid.n_steps) * d1)
        throw GridMismatchError(
            "simulate_slow_fast: shared slow noise does not match the grid");

    Philox rng(rs);
    const double fast_amp = std::pow(run.epsilon, -1.0 / sys.noise2.alpha);
    const double drift_scale = grid.h / run.epsilon;

    Path px(grid, d1), py(grid, d2);
    std::copy(run.x0.begin(), run.x0.end(), px.node(0).begin());
    std::copy(run.y0.begin(), run.y0.end(), py.node(0).begin());

    std::vector<double> bv(static_cast<std::size_t>(d1)), fv(static_cast<std::size_t>(d2)),
        dl1(static_cast<std::size_t>(d1)), dl2(static_cast<std::size_t>(d2));
    for (long k = 0; k < grid.n_steps; ++k) {
        auto x = px.node(k);
        auto y = py.node(k);
        auto xn = px.node(k + 1);
        auto yn = py.node(k + 1);
        sys.b(x, y, bv);
        sys.f(x, y, fv);
        if (shared_slow_noise.empty()) {
            sample_isotropic_increment(sys.noise1, grid.h, rng, dl1);
        } else {
            for (int i = 0; i < d1; ++i)
                dl1[std::size_t(i)] = shared_slow_noise[std::size_t(k) * d1 + i];
        }
        sample_isotropic_increment(sys.noise2, grid.h, rng, dl2);
        for (int i = 0; i < d1; ++i)
            xn[i] = (x[i] + bv[std::size_t(i)] * grid.h) + dl1[std::size_t(i)];
        for (int i = 0; i < d2; ++i)
            yn[i] = (y[i] + fv[std::size_t(i)] * drift_scale) +
                    fast_amp * dl2[std::size_t(i)];
        for (int i = 0; i < d1; ++i)
            if (!std::isfinite(xn[i]))
                throw NonFiniteError("simulate_slow_fast: X blew up at step " +
                                     std::to_string(k + 1));
        for (int i = 0; i < d2; ++i)
            if (!std::isfinite(yn[i]))
                throw NonFiniteError("simulate_slow_fast: Y blew up at step " +
                                     std::to_string(k + 1));
    }
    return {std::move(px), std::move(py)};
}

double rescaled_fast_law_check(const SlowFastSystem& sys, double eps, double t,
                               std::span<const double> x_frozen,
                               std::span<const double> y0, long n,
                               RngStream rs, int workers,
                               const PairField* f_tilde) {
    if (!(eps > 0.0) || !(t >= 0.0))
        throw DomainError("rescaled_fast_law_check: bad eps or t");
    if (n < 2) throw DomainError("rescaled_fast_law_check: n must be >= 2");
    if (t == 0.0) return 0.0;

    // Fast chain on the slow clock: step h with h/eps = 1/20, to slow time
    // t*eps. The comparison chain runs unit-eps dynamics with step h/eps, so
    // the two discrete chains agree in law exactly, not just asymptotically.
    const double h_eff = 1.0 / 20.0;
    const long n_steps = std::max<long>(1, std::lround(t / h_eff));

    const double fast_amp = std::pow(eps, -1.0 / sys.noise2.alpha);
    const double h_slow = h_eff * eps;

    std::vector<double> sample_eps(static_cast<std::size_t>(n)), sample_tilde(static_cast<std::size_t>(n));
    const PairField& f2 = f_tilde ? *f_tilde : sys.f;

    auto run_chain = [&](Philox& rng, const PairField& field, double h,
                         double drift_scale, double amp) {
        std::vector<double> y(y0.begin(), y0.end()),
            fv(static_cast<std::size_t>(sys.d2)), dl(static_cast<std::size_t>(sys.d2));
        for (long k = 0; k < n_steps; ++k) {
            field(x_frozen, y, fv);
            sample_isotropic_increment(sys.noise2, h, rng, dl);
            for (int i = 0; i < sys.d2; ++i)
                y[std::size_t(i)] = (y[std::size_t(i)] +
                                     fv[std::size_t(i)] * drift_scale) +
                                    amp * dl[std::size_t(i)];
        }
        return y[0];
    };

    parallel_for(n, workers, [&](long i) {
        Philox rng(substream(rs, 1, 0, std::uint32_t(i)));
        sample_eps[std::size_t(i)] =
            run_chain(rng, sys.f, h_slow, h_slow / eps, fast_amp);
    });
    parallel_for(n, workers, [&](long i) {
        Philox rng(substream(rs, 2, 0, std::uint32_t(i)));
        sample_tilde[std::size_t(i)] = run_chain(rng, f2, h_eff, h_eff, 1.0);
    });
    return ks_statistic(std::move(sample_eps), std::move(sample_tilde));
}

std::vector<EnsembleStat> fast_moment_bound_scan(const MultiscaleRun& run,
                                                 double p,
                                                 std::span<const double> times,
                                                 long n_paths, RngStream rs,
                                                 int workers) {
    const double alpha = run.system->noise2.alpha;
    if (!(p >= 1.0 && p < alpha))
        throw DomainError("fast_moment_bound_scan: p in [1,alpha) required");
    std::vector<long> nodes;
    for (double t : times) {
        const long k = std::lround(t / run.grid.h);
        if (k < 0 || k > run.grid.n_steps)
            throw DomainError("fast_moment_bound_scan: time outside grid");
        nodes.push_back(k);
    }
    VectorEnsembleStat stats = ensemble_mc_vector(
        [&](RngStream prs, std::span<double> row) {
            auto [px, py] = simulate_slow_fast(run, prs);
            for (std::size_t j = 0; j < nodes.size(); ++j)
                row[j] = std::pow(norm2(py.node(nodes[j])), p);
        },
        int(nodes.size()), n_paths, rs, workers);
    std::vector<EnsembleStat> out;
    for (std::size_t j = 0; j < nodes.size(); ++j)
        out.push_back(EnsembleStat{stats.mean[j], stats.stderror[j], n_paths});
    return out;
}

}  // namespace stablefast
