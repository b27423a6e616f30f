#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "grid.hpp"

namespace stablefast {

// Discrete-time sample path: states on every grid node, row-major
// (n_steps+1) x dim.
struct Path {
    TimeGrid grid;
    int dim = 0;
    std::vector<double> data;

    Path() = default;
    Path(TimeGrid g, int d)
        : grid(g), dim(d), data(std::size_t(g.n_nodes()) * d, 0.0) {}

    std::span<double> node(long k) {
        return {data.data() + std::size_t(k) * dim, std::size_t(dim)};
    }
    std::span<const double> node(long k) const {
        return {data.data() + std::size_t(k) * dim, std::size_t(dim)};
    }
    double scalar(long k) const { return data[std::size_t(k) * dim]; }
    long n_nodes() const { return grid.n_nodes(); }

    bool finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

}  // namespace stablefast
