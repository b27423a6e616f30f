#include "engine.hpp"

#include <algorithm>
#include <cmath>

namespace stablefast {

Path euler_path(const DriftField& drift, std::span<const double> x0,
                TimeGrid grid, std::span<const double> increments) {
    const int d = drift.out_dim;
    if (int(x0.size()) != d)
        throw DomainError("euler_path: x0 dimension mismatch");
    if (increments.size() != std::size_t(grid.n_steps) * d)
        throw DomainError("euler_path: noise must hold n_steps increments");
    Path path(grid, d);
    std::copy(x0.begin(), x0.end(), path.node(0).begin());
    std::vector<double> dv(static_cast<std::size_t>(d));
    for (long k = 0; k < grid.n_steps; ++k) {
        auto cur = path.node(k);
        auto nxt = path.node(k + 1);
        drift(cur, dv);
        for (int i = 0; i < d; ++i)
            nxt[i] = (cur[i] + dv[std::size_t(i)] * grid.h) +
                     increments[std::size_t(k) * d + i];
        for (int i = 0; i < d; ++i)
            if (!std::isfinite(nxt[i]))
                throw NonFiniteError("euler_path: state blew up at step " +
                                     std::to_string(k + 1));
    }
    return path;
}

double sup_norm_error(const Path& p1, const Path& p2, double p) {
    if (!(p1.grid == p2.grid) || p1.dim != p2.dim)
        throw GridMismatchError("sup_norm_error: paths on different grids");
    if (!(p >= 1.0))
        throw DomainError("sup_norm_error: p must be >= 1");
    double sup2 = 0.0;
    for (long k = 0; k < p1.n_nodes(); ++k) {
        auto a = p1.node(k);
        auto b = p2.node(k);
        double s = 0.0;
        for (int i = 0; i < p1.dim; ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        sup2 = std::max(sup2, s);
    }
    return std::pow(std::sqrt(sup2), p);
}

double VectorEnsembleStat::max_stderror() const {
    double m = 0.0;
    for (double s : stderror) m = std::max(m, s);
    return m;
}

}  // namespace stablefast
