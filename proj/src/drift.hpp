#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace stablefast {

// An evaluable coefficient field: deterministic, side-effect free map from a
// state to a drift vector. Lipschitz metadata is optional and trusted.
struct DriftField {
    int in_dim = 0;
    int out_dim = 0;
    std::function<void(std::span<const double>, std::span<double>)> eval;
    double lipschitz = std::numeric_limits<double>::quiet_NaN();

    void operator()(std::span<const double> x, std::span<double> out) const {
        eval(x, out);
    }
};

// Field on a product space (x,y) -> R^out, used for the coupled system
// coefficients b and f. Evaluation takes the two blocks separately.
struct PairField {
    int dx = 0;
    int dy = 0;
    int out_dim = 0;
    std::function<void(std::span<const double>, std::span<const double>,
                       std::span<double>)>
        eval;
    double lipschitz = std::numeric_limits<double>::quiet_NaN();

    void operator()(std::span<const double> x, std::span<const double> y,
                    std::span<double> out) const {
        eval(x, y, out);
    }

    // View with the x block frozen.
    DriftField frozen_x(std::vector<double> x) const {
        DriftField d;
        d.in_dim = dy;
        d.out_dim = out_dim;
        d.lipschitz = lipschitz;
        d.eval = [field = *this, xv = std::move(x)](std::span<const double> y,
                                                    std::span<double> out) {
            field.eval(xv, y, out);
        };
        return d;
    }
};

inline DriftField zero_field(int dim) {
    return DriftField{dim, dim,
                      [](std::span<const double>, std::span<double> out) {
                          for (auto& v : out) v = 0.0;
                      },
                      0.0};
}

}  // namespace stablefast
