#include "averaging.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace stablefast {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void check_frozen_step(const FrozenSpec& spec, double h) {
    if (spec.beta > 0.0 && h > 1.0 / (20.0 * spec.beta) * (1.0 + 1e-12))
        throw StiffnessError(
            "frozen equation: h must satisfy h <= 1/(20 beta)");
}

// One Euler sweep of the frozen chain, calling visit(k, y) after each step
// (and for k = 0 with the initial state).
template <class Visit>
void frozen_sweep(const FrozenSpec& spec, std::span<const double> y0,
                  TimeGrid grid, Philox& rng, Visit&& visit) {
    const int d = spec.dim();
    std::vector<double> y(y0.begin(), y0.end()), fv(static_cast<std::size_t>(d)),
        dl(static_cast<std::size_t>(d));
    visit(0L, std::span<const double>(y));
    for (long k = 0; k < grid.n_steps; ++k) {
        spec.f(spec.x, y, fv);
        sample_isotropic_increment(spec.noise, grid.h, rng, dl);
        for (int i = 0; i < d; ++i)
            y[std::size_t(i)] = (y[std::size_t(i)] +
                                 fv[std::size_t(i)] * grid.h) +
                                dl[std::size_t(i)];
        for (int i = 0; i < d; ++i)
            if (!std::isfinite(y[std::size_t(i)]))
                throw NonFiniteError("frozen equation: blow-up at step " +
                                     std::to_string(k + 1));
        visit(k + 1, std::span<const double>(y));
    }
}

}  // namespace

FrozenSpec::FrozenSpec(std::vector<double> x_, PairField f_, double alpha,
                       double beta_)
    : x(std::move(x_)), f(std::move(f_)), noise(alpha, f.dy), beta(beta_) {
    if (int(x.size()) != f.dx)
        throw DomainError("FrozenSpec: frozen state dimension mismatch");
    if (beta < 0.0) throw DomainError("FrozenSpec: beta must be >= 0");
    if (beta > 0.0) {
        // Same dissipativity spot check as SlowFastSystem, frozen x only.
        Philox rng(RngStream{0x5FA57CDEull, 1});
        const int d = f.dy;
        std::vector<double> y1(static_cast<std::size_t>(d)), y2(static_cast<std::size_t>(d)),
            f1(static_cast<std::size_t>(d)), f2(static_cast<std::size_t>(d));
        for (int trial = 0; trial < 1000; ++trial) {
            for (auto& v : y1) v = 8.0 * (rng.uniform() - 0.5);
            for (auto& v : y2) v = 8.0 * (rng.uniform() - 0.5);
            f(x, y1, f1);
            f(x, y2, f2);
            double inner = 0.0, dist2 = 0.0;
            for (int i = 0; i < d; ++i) {
                const double dy = y1[std::size_t(i)] - y2[std::size_t(i)];
                inner += (f1[std::size_t(i)] - f2[std::size_t(i)]) * dy;
                dist2 += dy * dy;
            }
            if (inner > -beta * dist2 + 1e-9 * (1.0 + dist2))
                throw DomainError("FrozenSpec: dissipativity check failed");
        }
    }
}

Path simulate_frozen(const FrozenSpec& spec, std::span<const double> y0,
                     TimeGrid grid, RngStream rs) {
    if (int(y0.size()) != spec.dim())
        throw DomainError("simulate_frozen: y0 dimension mismatch");
    check_frozen_step(spec, grid.h);
    Philox rng(rs);
    Path path(grid, spec.dim());
    frozen_sweep(spec, y0, grid, rng, [&](long k, std::span<const double> y) {
        std::copy(y.begin(), y.end(), path.node(k).begin());
    });
    return path;
}

double InvariantMeasureEstimate::functional_mean(
    const std::function<double(std::span<const double>)>& g) const {
    RunningStat acc;
    for (long i = 0; i < n; ++i)
        acc.add(g({samples.data() + std::size_t(i) * dim, std::size_t(dim)}));
    return acc.mean();
}

InvariantMeasureEstimate invariant_samples(const FrozenSpec& spec,
                                           std::span<const double> y0, long n,
                                           double burn_in, double spacing,
                                           RngStream rs) {
    if (!(spec.beta > 0.0))
        throw DomainError("invariant_samples: requires beta > 0");
    if (n < 1) throw DomainError("invariant_samples: n must be >= 1");
    if (burn_in <= 0.0) burn_in = 10.0 / spec.beta;
    if (spacing <= 0.0) spacing = 1.0 / spec.beta;
    if (burn_in < 10.0 / spec.beta - 1e-12)
        throw DomainError("invariant_samples: burn_in must be >= 10/beta");
    if (spacing < 1.0 / spec.beta - 1e-12)
        throw DomainError("invariant_samples: spacing must be >= 1/beta");

    const double h = 1.0 / (20.0 * spec.beta);
    const long burn_steps = long(std::ceil(burn_in / h));
    const long gap_steps = std::max<long>(1, std::lround(spacing / h));
    const long total = burn_steps + gap_steps * n;
    const TimeGrid grid = TimeGrid::from_step(h, total);

    InvariantMeasureEstimate est;
    est.x = spec.x;
    est.dim = spec.dim();
    est.burn_in = burn_steps * h;
    est.spacing = gap_steps * h;
    est.samples.reserve(std::size_t(n) * est.dim);
    Philox rng(rs);
    long taken = 0;
    frozen_sweep(spec, y0, grid, rng, [&](long k, std::span<const double> y) {
        if (k > burn_steps && (k - burn_steps) % gap_steps == 0 && taken < n) {
            est.samples.insert(est.samples.end(), y.begin(), y.end());
            ++taken;
        }
    });
    est.n = taken;
    return est;
}

DecayCurve contraction_check(const FrozenSpec& spec,
                             std::span<const double> y1,
                             std::span<const double> y2,
                             const std::vector<double>* x_alt, double T,
                             long n_paths, RngStream rs, int workers) {
    const int d = spec.dim();
    if (int(y1.size()) != d || int(y2.size()) != d)
        throw DomainError("contraction_check: initial state mismatch");
    const double h = spec.beta > 0.0 ? 1.0 / (20.0 * spec.beta) : T / 400.0;
    const long n_steps = long(std::ceil(T / h));
    const TimeGrid grid = TimeGrid::from_step(h, n_steps);
    const std::vector<double>& x2 = x_alt ? *x_alt : spec.x;

    // Synchronous coupling: both copies consume identical increments.
    auto coupled_gap = [&](RngStream prs, std::span<double> row) {
        Philox rng(prs);
        std::vector<double> a(y1.begin(), y1.end()), b(y2.begin(), y2.end()),
            fa(static_cast<std::size_t>(d)), fb(static_cast<std::size_t>(d)), dl(static_cast<std::size_t>(d));
        double gap0 = 0.0;
        for (int i = 0; i < d; ++i) {
            const double dd = a[std::size_t(i)] - b[std::size_t(i)];
            gap0 += dd * dd;
        }
        row[0] = std::sqrt(gap0);
        for (long k = 0; k < n_steps; ++k) {
            spec.f(spec.x, a, fa);
            spec.f(x2, b, fb);
            sample_isotropic_increment(spec.noise, h, rng, dl);
            double gap2 = 0.0;
            for (int i = 0; i < d; ++i) {
                a[std::size_t(i)] = (a[std::size_t(i)] +
                                     fa[std::size_t(i)] * h) +
                                    dl[std::size_t(i)];
                b[std::size_t(i)] = (b[std::size_t(i)] +
                                     fb[std::size_t(i)] * h) +
                                    dl[std::size_t(i)];
                const double dd = a[std::size_t(i)] - b[std::size_t(i)];
                gap2 += dd * dd;
            }
            row[std::size_t(k) + 1] = std::sqrt(gap2);
        }
    };

    DecayCurve curve;
    for (long k = 0; k <= n_steps; ++k) curve.t.push_back(grid.node(k));
    curve.single.resize(std::size_t(n_steps) + 1);
    coupled_gap(path_stream(rs, 0), curve.single);
    VectorEnsembleStat stat = ensemble_mc_vector(
        coupled_gap, int(n_steps + 1), std::max<long>(2, n_paths), rs, workers);
    curve.ensemble_mean = std::move(stat.mean);
    return curve;
}

VectorEnsembleStat ergodic_average_bbar(const FrozenSpec& spec,
                                        const PairField& b, double T,
                                        double burn_in, long n_reps,
                                        RngStream rs, int workers) {
    if (!(spec.beta > 0.0))
        throw DomainError("ergodic_average_bbar: requires beta > 0");
    if (burn_in <= 0.0) burn_in = 10.0 / spec.beta;
    if (T < burn_in + 10.0 / spec.beta - 1e-12)
        throw DomainError("ergodic_average_bbar: T must be >= burn_in + 10/beta");
    const double h = 1.0 / (20.0 * spec.beta);
    const long n_steps = long(std::ceil(T / h));
    const long burn_steps = long(std::ceil(burn_in / h));
    const TimeGrid grid = TimeGrid::from_step(h, n_steps);
    const int d1 = b.out_dim;

    const std::vector<double> y0(std::size_t(spec.dim()), 0.0);
    return ensemble_mc_vector(
        [&](RngStream prs, std::span<double> row) {
            Philox rng(prs);
            std::vector<double> acc(std::size_t(d1), 0.0),
                bv(static_cast<std::size_t>(d1));
            long count = 0;
            frozen_sweep(spec, y0, grid, rng,
                         [&](long k, std::span<const double> y) {
                             if (k < burn_steps) return;
                             b(spec.x, y, bv);
                             for (int i = 0; i < d1; ++i)
                                 acc[std::size_t(i)] += bv[std::size_t(i)];
                             ++count;
                         });
            for (int i = 0; i < d1; ++i)
                row[std::size_t(i)] = acc[std::size_t(i)] / double(count);
        },
        d1, n_reps, rs, workers);
}

ErgodicityDecay ergodicity_decay(
    const FrozenSpec& spec,
    const std::function<double(std::span<const double>)>& g, double g_lipschitz,
    std::span<const double> y0, std::span<const double> times, long n,
    RngStream rs, int workers) {
    if (!(spec.beta > 0.0))
        throw DomainError("ergodicity_decay: requires beta > 0");
    if (!(g_lipschitz > 0.0) && g_lipschitz != 0.0)
        throw DomainError("ergodicity_decay: Lipschitz constant required");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw DomainError("ergodicity_decay: times must be increasing");

    const double h = 1.0 / (20.0 * spec.beta);
    const double t_max = times.empty() ? 0.0 : times.back();
    // The plateau estimate is decoupled from the decay fit: largest time x 4.
    const double t_plateau = std::max(4.0 * t_max, 40.0 / spec.beta);
    const long plateau_steps = long(std::ceil(t_plateau / h));
    const TimeGrid grid = TimeGrid::from_step(h, plateau_steps);

    std::vector<long> nodes;
    for (double t : times) nodes.push_back(std::lround(t / h));

    VectorEnsembleStat stat = ensemble_mc_vector(
        [&](RngStream prs, std::span<double> row) {
            Philox rng(prs);
            std::size_t next = 0;
            frozen_sweep(spec, y0, grid, rng,
                         [&](long k, std::span<const double> y) {
                             while (next < nodes.size() && nodes[next] == k) {
                                 row[next] = g(y);
                                 ++next;
                             }
                             if (k == plateau_steps) row[nodes.size()] = g(y);
                         });
        },
        int(nodes.size()) + 1, n, rs, workers);

    ErgodicityDecay out;
    out.times.assign(times.begin(), times.end());
    out.mu_hat = stat.mean[nodes.size()];
    out.mu_stderror = stat.stderror[nodes.size()];
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        out.gap.push_back(std::abs(stat.mean[j] - out.mu_hat));
        out.stderror.push_back(stat.stderror[j]);
    }
    // Exponential fit on points safely above the Monte Carlo noise floor.
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double floor_j =
            3.0 * std::sqrt(out.stderror[j] * out.stderror[j] +
                            out.mu_stderror * out.mu_stderror);
        if (out.gap[j] > floor_j) {
            xs.push_back(out.times[j]);
            ys.push_back(std::log(out.gap[j]));
        }
    }
    out.points_used = int(xs.size());
    if (xs.size() >= 2) out.fitted_rate = -ols(xs, ys).slope;
    return out;
}

double BbarTable::interpolate(double x) const {
    if (xs.empty()) throw DomainError("BbarTable: empty table");
    if (x < xs.front() || x > xs.back())
        throw InterpolationRangeError(
            "BbarTable: x = " + std::to_string(x) + " outside [" +
            std::to_string(xs.front()) + ", " + std::to_string(xs.back()) + "]");
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return values.front();
    if (it == xs.end()) return values.back();
    const std::size_t hi = std::size_t(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return values[lo] * (1.0 - w) + values[hi] * w;
}

double BbarTable::max_stderror() const {
    double m = 0.0;
    for (double s : stderrs) m = std::max(m, s);
    return m;
}

BbarProvider bbar_from_table(const BbarTable& table) {
    return [table](std::span<const double> x, std::span<double> out) {
        out[0] = table.interpolate(x[0]);
    };
}

BbarTable build_bbar_table(const FrozenSpec& frozen_template,
                           const PairField& b, double x_lo, double x_hi,
                           int n_points, double T, double burn_in, long n_reps,
                           RngStream rs, int workers) {
    if (n_points < 2 || !(x_hi > x_lo))
        throw DomainError("build_bbar_table: bad x grid");
    if (b.out_dim != 1 || frozen_template.f.dx != 1)
        throw DomainError("build_bbar_table: tabulation is d1 = 1 only");
    BbarTable table;
    for (int i = 0; i < n_points; ++i) {
        const double x =
            x_lo + (x_hi - x_lo) * double(i) / double(n_points - 1);
        FrozenSpec spec({x}, frozen_template.f, frozen_template.noise.alpha,
                        frozen_template.beta);
        VectorEnsembleStat stat =
            ergodic_average_bbar(spec, b, T, burn_in, n_reps,
                                 substream(rs, 1, std::uint16_t(i), 0), workers);
        table.xs.push_back(x);
        table.values.push_back(stat.mean[0]);
        table.stderrs.push_back(stat.stderror[0]);
    }
    return table;
}

Path simulate_averaged(const BbarProvider& bbar, int d1, TimeGrid grid,
                       std::span<const double> x0,
                       std::span<const double> slow_noise) {
    if (slow_noise.size() != std::size_t(grid.n_steps) * d1)
        throw GridMismatchError("simulate_averaged: noise does not match grid");
    DriftField drift;
    drift.in_dim = drift.out_dim = d1;
    drift.eval = bbar;
    return euler_path(drift, x0, grid, slow_noise);
}

MomentGrowthResult frozen_sup_moment_growth(const FrozenSpec& spec, double p,
                                            std::span<const double> T_list,
                                            long n_paths, double h,
                                            RngStream rs, int workers) {
    if (!(p >= 1.0 && p < spec.noise.alpha))
        throw DomainError("frozen_sup_moment_growth: p in [1,alpha) required");
    if (T_list.size() < 2)
        throw DegenerateFitError(
            "frozen_sup_moment_growth: slope undefined for fewer than two T");
    for (std::size_t i = 1; i < T_list.size(); ++i)
        if (!(T_list[i] > T_list[i - 1]))
            throw DomainError("frozen_sup_moment_growth: T_list must increase");
    check_frozen_step(spec, h);

    const double t_max = T_list.back();
    const long n_steps = long(std::ceil(t_max / h));
    const TimeGrid grid = TimeGrid::from_step(h, n_steps);
    std::vector<long> nodes;
    for (double T : T_list) nodes.push_back(std::lround(T / h));

    const std::vector<double> y0(std::size_t(spec.dim()), 0.0);
    VectorEnsembleStat stat = ensemble_mc_vector(
        [&](RngStream prs, std::span<double> row) {
            Philox rng(prs);
            double sup = 0.0;
            std::size_t next = 0;
            frozen_sweep(spec, y0, grid, rng,
                         [&](long k, std::span<const double> y) {
                             sup = std::max(sup, norm2(y));
                             while (next < nodes.size() && nodes[next] == k) {
                                 row[next] = std::pow(sup, p);
                                 ++next;
                             }
                         });
        },
        int(nodes.size()), n_paths, rs, workers);

    MomentGrowthResult out;
    out.T.assign(T_list.begin(), T_list.end());
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        out.sup_moment.push_back(
            EnsembleStat{stat.mean[j], stat.stderror[j], n_paths});
        lx.push_back(std::log(out.T[j]));
        ly.push_back(std::log(stat.mean[j]));
    }
    out.slope = ols(lx, ly).slope;
    return out;
}

struct MemoizedBbar::Impl {
    PairField f;
    PairField b;
    double alpha, beta, T, burn_in;
    long n_reps;
    RngStream rs;
    std::map<std::vector<long>, std::vector<double>> memo;
    std::mutex mutex;
};

MemoizedBbar::MemoizedBbar(PairField f, PairField b, double alpha, double beta,
                           double T, double burn_in, long n_reps, RngStream rs)
    : impl_(std::make_shared<Impl>()) {
    impl_->f = std::move(f);
    impl_->b = std::move(b);
    impl_->alpha = alpha;
    impl_->beta = beta;
    impl_->T = T;
    impl_->burn_in = burn_in;
    impl_->n_reps = n_reps;
    impl_->rs = rs;
}

void MemoizedBbar::operator()(std::span<const double> x,
                              std::span<double> out) {
    // Quantize the key so nearby queries share one estimate.
    std::vector<long> key(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        key[i] = std::lround(x[i] * 64.0);
    {
        std::lock_guard lock(impl_->mutex);
        auto it = impl_->memo.find(key);
        if (it != impl_->memo.end()) {
            std::copy(it->second.begin(), it->second.end(), out.begin());
            return;
        }
    }
    std::vector<double> xq(key.size());
    for (std::size_t i = 0; i < key.size(); ++i)
        xq[i] = double(key[i]) / 64.0;
    FrozenSpec spec(xq, impl_->f, impl_->alpha, impl_->beta);
    std::uint32_t tag = 0;
    for (long k : key) tag = tag * 2654435761u + std::uint32_t(k);
    VectorEnsembleStat stat = ergodic_average_bbar(
        spec, impl_->b, impl_->T, impl_->burn_in, impl_->n_reps,
        substream(impl_->rs, 3, std::uint16_t(tag >> 16),
                  std::uint32_t(tag & 0xFFFF)),
        1);
    {
        std::lock_guard lock(impl_->mutex);
        impl_->memo.emplace(std::move(key), stat.mean);
    }
    std::copy(stat.mean.begin(), stat.mean.end(), out.begin());
}

}  // namespace stablefast
