#pragma once

#include <span>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace stablefast {

// Stability index and ambient dimension of a driving noise. The scale
// convention is fixed throughout: an increment over time dt has
// characteristic function h -> exp(-dt * |h|^alpha).
struct StableSpec {
    double alpha;
    int dim;

    StableSpec(double alpha_, int dim_) : alpha(alpha_), dim(dim_) {
        if (!(alpha > 1.0 && alpha < 2.0))
            throw DomainError("StableSpec: alpha must lie in (1,2), got " +
                              std::to_string(alpha_));
        if (dim < 1)
            throw DomainError("StableSpec: dim must be >= 1");
    }
};

// One draw of a standard symmetric alpha-stable variable, characteristic
// function exp(-|h|^alpha). Chambers-Mallows-Stuck transform of one uniform
// and one exponential variate.
double sample_sym_stable_1d(double alpha, Philox& rng);

// One draw of a totally skewed positive (alpha/2)-stable variable with
// Laplace transform lambda -> exp(-dt * lambda^{alpha/2}).
double sample_subordinator_increment(double alpha, double dt, Philox& rng);

// One increment of the isotropic alpha-stable process over time dt:
// characteristic function exp(-dt |h|^alpha). Built as G * sqrt(2 S) with S
// a subordinator increment; dim = 1 uses the CMS draw scaled by dt^{1/alpha}.
void sample_isotropic_increment(const StableSpec& spec, double dt, Philox& rng,
                                std::span<double> out);

// n i.i.d. increments at step h, row-major n x dim, reproducible from the
// stream value.
std::vector<double> increments_on_grid(const StableSpec& spec, long n, double h,
                                       RngStream rs);

// Convenience wrappers taking a stream value (one draw each).
double sample_sym_stable_1d(double alpha, RngStream rs);
double sample_subordinator_increment(double alpha, double dt, RngStream rs);

}  // namespace stablefast
