#pragma once

#include <functional>
#include <span>
#include <vector>

#include "drift.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "path.hpp"
#include "stats.hpp"

namespace stablefast {

// Ensemble Monte Carlo summary.
struct EnsembleStat {
    double mean = 0.0;
    double stderror = 0.0;  // sample std / sqrt(n_paths)
    long n_paths = 0;
};

// Forward Euler path X_{k+1} = X_k + drift(X_k) h + dL_k. `increments` holds
// n_steps rows of `dim` entries. Throws NonFiniteError on NaN/Inf states;
// huge-but-finite values pass through untouched.
Path euler_path(const DriftField& drift, std::span<const double> x0,
                TimeGrid grid, std::span<const double> increments);

// (max_k |p1_k - p2_k|)^p with |.| Euclidean over the state dimension.
double sup_norm_error(const Path& p1, const Path& p2, double p);

// Mean and stderr of a scalar path functional over independent paths. Path i
// consumes the stream path_stream(base, i); the reduction runs in path-index
// order regardless of worker count, so fixed seed implies fixed output.
template <class Fn>
EnsembleStat ensemble_mc(Fn&& path_functional, long n_paths, RngStream base,
                         int workers = 1) {
    if (n_paths < 2)
        throw DomainError("ensemble_mc: n_paths must be >= 2");
    std::vector<double> values(static_cast<std::size_t>(n_paths));
    parallel_for(n_paths, workers, [&](long i) {
        try {
            values[std::size_t(i)] = path_functional(path_stream(base, i));
        } catch (NonFiniteError& e) {
            throw NonFiniteError(std::string(e.what()) + " (path " +
                                     std::to_string(i) + ")",
                                 i);
        }
    });
    RunningStat acc;
    for (double v : values) {
        if (!std::isfinite(v))
            throw NonFiniteError("ensemble_mc: non-finite functional value",
                                 long(&v - values.data()));
        acc.add(v);
    }
    return EnsembleStat{acc.mean(), acc.stderror(), n_paths};
}

// Vector-valued variant: functional fills a row of `width` entries per path;
// per-component mean/stderr, same deterministic reduction.
struct VectorEnsembleStat {
    std::vector<double> mean;
    std::vector<double> stderror;
    long n_paths = 0;
    double max_stderror() const;
};

template <class Fn>
VectorEnsembleStat ensemble_mc_vector(Fn&& fill_row, int width, long n_paths,
                                      RngStream base, int workers = 1) {
    if (n_paths < 2)
        throw DomainError("ensemble_mc: n_paths must be >= 2");
    std::vector<double> rows(std::size_t(n_paths) * width);
    parallel_for(n_paths, workers, [&](long i) {
        try {
            fill_row(path_stream(base, i),
                     std::span<double>(rows.data() + std::size_t(i) * width,
                                       std::size_t(width)));
        } catch (NonFiniteError& e) {
            throw NonFiniteError(std::string(e.what()) + " (path " +
                                     std::to_string(i) + ")",
                                 i);
        }
    });
    std::vector<RunningStat> acc(static_cast<std::size_t>(width));
    for (long i = 0; i < n_paths; ++i)
        for (int c = 0; c < width; ++c) {
            const double v = rows[std::size_t(i) * width + c];
            if (!std::isfinite(v))
                throw NonFiniteError("ensemble_mc: non-finite value", i);
            acc[std::size_t(c)].add(v);
        }
    VectorEnsembleStat out;
    out.n_paths = n_paths;
    out.mean.resize(std::size_t(width));
    out.stderror.resize(std::size_t(width));
    for (int c = 0; c < width; ++c) {
        out.mean[std::size_t(c)] = acc[std::size_t(c)].mean();
        out.stderror[std::size_t(c)] = acc[std::size_t(c)].stderror();
    }
    return out;
}

}  // namespace stablefast
