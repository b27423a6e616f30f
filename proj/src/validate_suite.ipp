// One-shot validation suite, included inside the runner's implementation
// namespace. Every check runs on a fixed derived stream so the table is
// deterministic for a given seed.

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

void run_validate(Ctx& ctx) {
    const double alpha = ctx.cfg.get_double("alpha");
    const bool quick = ctx.cfg.get_bool("quick");
    const long scale = quick ? 1 : 10;
    const RngStream base = substream(ctx.seed_stream, 12, 0, 0);
    std::vector<Check> checks;

    {  // Characteristic function of unit-time increments at h = 1.
        const long n = 200000 * scale;
        Philox rng(substream(base, 1, 0, 0));
        RunningStat acc;
        for (long i = 0; i < n; ++i)
            acc.add(std::cos(sample_sym_stable_1d(alpha, rng)));
        const double target = std::exp(-1.0);
        const double gap = std::abs(acc.mean() - target);
        checks.push_back({"sampler_ecf", gap <= 4.0 * acc.stderror(),
                          "E cos(X) = " + format_double(acc.mean()) +
                              " vs exp(-1), gap " + format_double(gap)});
    }
    {  // Symmetry: the empirical median of the stable draw.
        const long n = 200000 * scale;
        Philox rng(substream(base, 2, 0, 0));
        std::vector<double> draws(static_cast<std::size_t>(n));
        for (auto& d : draws) d = sample_sym_stable_1d(alpha, rng);
        const double med = quantile(draws, 0.5);
        checks.push_back({"sampler_median", std::abs(med) < 0.02,
                          "median = " + format_double(med)});
    }
    {  // Subordinator Laplace transform at lambda = 1.
        const long n = 100000 * scale;
        Philox rng(substream(base, 3, 0, 0));
        RunningStat acc;
        for (long i = 0; i < n; ++i)
            acc.add(std::exp(-sample_subordinator_increment(alpha, 1.0, rng)));
        const double gap = std::abs(acc.mean() - std::exp(-1.0));
        checks.push_back({"subordinator_laplace", gap <= 4.0 * acc.stderror(),
                          "E exp(-S) = " + format_double(acc.mean())});
    }
    {  // Self-similarity of the isotropic increment, dim = 2, p = 1.
        const long n = 50000 * scale;
        const StableSpec spec(alpha, 2);
        Philox rng(substream(base, 4, 0, 0));
        RunningStat m1, m2;
        std::vector<double> v(2);
        for (long i = 0; i < n; ++i) {
            sample_isotropic_increment(spec, 1.0, rng, v);
            m1.add(std::hypot(v[0], v[1]));
            sample_isotropic_increment(spec, 0.25, rng, v);
            m2.add(std::hypot(v[0], v[1]));
        }
        const double measured = m2.mean() / m1.mean();
        const double target = std::pow(0.25, 1.0 / alpha);
        checks.push_back({"isotropic_selfsimilarity",
                          rel_diff(measured, target) < 0.05,
                          "ratio " + format_double(measured) + " vs " +
                              format_double(target)});
    }
    {  // Worker-count invariance of the deterministic reduction.
        auto functional = [&](RngStream rs) {
            Philox rng(rs);
            double s = 0.0;
            for (int k = 0; k < 50; ++k) s += sample_sym_stable_1d(alpha, rng);
            return s;
        };
        const EnsembleStat a =
            ensemble_mc(functional, 500, substream(base, 5, 0, 0), 1);
        const EnsembleStat b =
            ensemble_mc(functional, 500, substream(base, 5, 0, 0), 2);
        checks.push_back({"determinism_workers",
                          a.mean == b.mean && a.stderror == b.stderror,
                          "mean " + format_double(a.mean)});
    }
    {  // Euler with zero drift reproduces noise partial sums bitwise.
        const StableSpec spec(alpha, 1);
        const TimeGrid grid = TimeGrid::from_step(0.01, 200);
        auto noise = increments_on_grid(spec, grid.n_steps, grid.h,
                                        substream(base, 6, 0, 0));
        const Path p = euler_path(zero_field(1), std::vector<double>{0.25},
                                  grid, noise);
        bool exact = true;
        double sum = 0.25;
        for (long k = 0; k < grid.n_steps; ++k) {
            sum = (sum + 0.0) + noise[std::size_t(k)];
            if (p.scalar(k + 1) != sum) exact = false;
        }
        checks.push_back({"euler_zero_drift", exact, "bitwise partial sums"});
    }
    {  // Synchronous-coupling contraction, linear f = -y: ratio 1-h per step.
        PairField f;
        f.dx = f.dy = f.out_dim = 1;
        f.eval = [](std::span<const double>, std::span<const double> y,
                    std::span<double> out) { out[0] = -y[0]; };
        FrozenSpec spec({0.0}, f, alpha, 1.0);
        DecayCurve curve = contraction_check(spec, std::vector<double>{2.0},
                                             std::vector<double>{-1.0}, nullptr,
                                             2.0, 2, substream(base, 7, 0, 0),
                                             1);
        bool ok = true;
        const double h = curve.t[1] - curve.t[0];
        for (std::size_t k = 1; k < curve.single.size(); ++k) {
            const double expect = curve.single[k - 1] * (1.0 - h);
            if (rel_diff(curve.single[k], expect) > 1e-12) ok = false;
        }
        checks.push_back({"contraction_linear_exact", ok,
                          "per-step ratio (1-h) at machine precision"});
    }
    {  // Time-rescaling law equality, KS below the 1% critical value.
        TestProblem tp = make_test_problem("example", alpha);
        const long n = 2000 * scale;
        const double d = rescaled_fast_law_check(
            *tp.system, 0.1, 2.0, tp.x0, tp.y0, n, substream(base, 8, 0, 0),
            ctx.workers);
        const double crit = ks_critical(std::size_t(n), std::size_t(n), 0.01);
        checks.push_back({"rescaled_law_ks", d < crit,
                          "KS " + format_double(d) + " < " +
                              format_double(crit)});
    }
    {  // Oracle moment ratio is eps-independent.
        const std::vector<double> eps{0.25, 0.0625};
        OracleMomentResult res =
            oracle_moment_check(alpha, 1.0, 1.0, eps, 4000 * scale,
                                substream(base, 9, 0, 0), ctx.workers);
        const double r0 = res.points[0].ratio, r1 = res.points[1].ratio;
        const double rse = std::sqrt(
            std::pow(res.points[0].stderror / r0, 2) +
            std::pow(res.points[1].stderror / r1, 2));
        checks.push_back({"oracle_ratio_constant",
                          std::abs(r0 / r1 - 1.0) <= 5.0 * rse,
                          "ratio gap " + format_double(std::abs(r0 / r1 - 1.0)) +
                              " vs 5 rse " + format_double(5.0 * rse)});
    }
    {  // Frozen equation long-run law vs the exact stationary stable law.
        TestProblem tp = make_test_problem("example", alpha);
        FrozenSpec spec(tp.x0, tp.system->f, alpha, 1.0);
        const long n = 2000 * scale;
        const TimeGrid grid = TimeGrid::from_step(0.05, 400);
        std::vector<double> ends(static_cast<std::size_t>(n)), exact(static_cast<std::size_t>(n));
        parallel_for(n, ctx.workers, [&](long i) {
            const Path p =
                simulate_frozen(spec, std::vector<double>{0.0}, grid,
                                substream(base, 10, 1, std::uint32_t(i)));
            ends[std::size_t(i)] = p.scalar(grid.n_steps);
        });
        const double scale_stat = stationary_ou_scale(alpha);
        Philox rng(substream(base, 10, 2, 0));
        for (auto& e : exact) e = scale_stat * sample_sym_stable_1d(alpha, rng);
        const double d = ks_statistic(ends, exact);
        const double crit = ks_critical(std::size_t(n), std::size_t(n), 0.01);
        checks.push_back({"stationary_law_ks", d < crit,
                          "KS " + format_double(d) + " < " +
                              format_double(crit)});
    }
    {  // bbar of the linear problem vanishes.
        TestProblem tp = make_test_problem("linear", alpha);
        FrozenSpec spec({1.0}, tp.system->f, alpha, 1.0);
        VectorEnsembleStat stat =
            ergodic_average_bbar(spec, tp.system->b, 30.0, 10.0, 4,
                                 substream(base, 11, 0, 0), ctx.workers);
        checks.push_back({"bbar_linear_zero",
                          std::abs(stat.mean[0]) <= 4.0 * stat.stderror[0],
                          "bbar(1) = " + format_double(stat.mean[0]) + " +- " +
                              format_double(stat.stderror[0])});
    }
    {  // Emitted CSV parses back to the same numbers.
        CsvTable t;
        t.header = {"eps", "error", "stderr", "n_paths", "h"};
        t.rows.push_back({0.125, 0.3710000000000001, 0.011, 10000, 0.0025});
        t.rows.push_back({0.0625, 0.29, 0.009, 10000, 0.00125});
        const CsvTable back = CsvTable::parse(t.to_string());
        bool ok = back.header == t.header && back.rows.size() == t.rows.size();
        if (ok)
            for (std::size_t r = 0; r < t.rows.size(); ++r)
                for (std::size_t c = 0; c < t.rows[r].size(); ++c)
                    if (back.rows[r][c] != t.rows[r][c]) ok = false;
        checks.push_back({"csv_roundtrip", ok, "header + values identical"});
    }
    {  // Dynkin identity on the exactly solvable corrector.
        TestProblem tp = make_test_problem("example", alpha);
        CorrectorSetup setup{tp.system->b, tp.system->f, tp.bbar_analytic,
                             1.0, alpha};
        const long n = 2000 * scale;
        PoissonSolution sol =
            phi_estimate(setup, std::vector<double>{1.0},
                         std::vector<double>{2.0}, 1e-2, n,
                         substream(base, 13, 0, 0), ctx.workers);
        DynkinResidual dyn = dynkin_residual(
            setup, std::vector<double>{1.0}, std::vector<double>{2.0}, 1.0,
            sol, 1e-2, n, substream(base, 13, 1, 0), ctx.workers);
        checks.push_back({"dynkin_identity",
                          dyn.residual <= 3.0 * dyn.combined_stderror,
                          "residual " + format_double(dyn.residual) + " vs 3 x " +
                              format_double(dyn.combined_stderror)});
    }

    json rows = json::array();
    int failed = 0;
    for (const auto& c : checks) {
        rows.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        if (!c.pass) ++failed;
    }
    ctx.results = {{"checks", rows},
                   {"n_failed", failed},
                   {"n_checks", int(checks.size())},
                   {"mode", quick ? "quick" : "full"}};
}
