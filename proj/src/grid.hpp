#pragma once

#include <cmath>

#include "errors.hpp"

namespace stablefast {

// Uniform grid on [0, T]. Stored as (h, n_steps) so that horizon = h*n_steps
// holds exactly in the representable arithmetic.
struct TimeGrid {
    double h = 0.0;
    long n_steps = 0;

    static TimeGrid from_step(double h, long n_steps) {
        if (!(h > 0.0)) throw DomainError("TimeGrid: h must be > 0");
        if (n_steps < 1) throw DomainError("TimeGrid: n_steps must be >= 1");
        return TimeGrid{h, n_steps};
    }

    // h = T/n_steps; the stored horizon is h*n_steps (equal to T up to one
    // rounding of the division).
    static TimeGrid from_horizon(double T, long n_steps) {
        if (!(T > 0.0)) throw DomainError("TimeGrid: T must be > 0");
        if (n_steps < 1) throw DomainError("TimeGrid: n_steps must be >= 1");
        return TimeGrid{T / double(n_steps), n_steps};
    }

    double horizon() const { return h * double(n_steps); }
    double node(long k) const { return h * double(k); }
    long n_nodes() const { return n_steps + 1; }

    bool operator==(const TimeGrid& o) const {
        return h == o.h && n_steps == o.n_steps;
    }
};

}  // namespace stablefast
