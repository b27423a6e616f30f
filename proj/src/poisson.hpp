#pragma once

#include <functional>
#include <vector>

#include "averaging.hpp"

namespace stablefast {

// Everything the corrector needs: the frozen dynamics (f, noise, beta), the
// slow drift b, and the averaged drift bbar (analytic or tabulated with
// stderr well below tol). The non-local generator is never assembled; all
// verification goes through simulation identities.
struct CorrectorSetup {
    PairField b;
    PairField f;
    BbarProvider bbar;
    double beta;
    double alpha;
    // Quadrature step = quad_step_frac / beta; must stay <= 1/(20 beta).
    double quad_step_frac = 1.0 / 40.0;
};

// Monte Carlo estimate of Phi(x,y) = int_0^inf [E b(x,Y^{x,y}_t) - bbar(x)] dt
// truncated at T_star >= (2/beta) ln((1+|y|)/tol), trapezoid in t over one
// trajectory ensemble. stderr comes from the per-path time integrals, which
// are i.i.d., so the node-to-node correlation of the reused paths is handled
// exactly rather than bounded.
struct PoissonSolution {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> value;  // d1 components
    double t_star = 0.0;
    long n_paths = 0;
    double stderror = 0.0;      // max over components
    std::vector<double> stderr_components;
};

PoissonSolution phi_estimate(const CorrectorSetup& setup,
                             std::span<const double> x,
                             std::span<const double> y, double tol,
                             long n_paths, RngStream rs, int workers = 1);

// Markov-property residual
//   | Phi(x,y) - E Phi(x, Y_t^{x,y}) - int_0^t [E b(x,Y_s) - bbar(x)] ds |
// with the inner Phi at random endpoints estimated by fresh single-trajectory
// integrals on independent child streams.
struct DynkinResidual {
    double residual = 0.0;         // max over components
    double combined_stderror = 0.0;
    std::vector<double> components;
};

DynkinResidual dynkin_residual(const CorrectorSetup& setup,
                               std::span<const double> x,
                               std::span<const double> y, double t,
                               const PoissonSolution& phi, double tol, long n,
                               RngStream rs, int workers = 1);

// Fits log |Phi| against log |y| over a geometric scan of |y| along a fixed
// direction; flags the scan degenerate when every value sits inside its own
// noise band (zero corrector).
struct GrowthProbe {
    std::vector<double> magnitudes;
    std::vector<double> phi_norm;
    std::vector<double> stderror;
    double exponent = 0.0;
    bool degenerate = false;
};

GrowthProbe phi_growth_probe(const CorrectorSetup& setup,
                             std::span<const double> x,
                             std::span<const double> y_magnitudes, double tol,
                             long n, RngStream rs, int workers = 1);

// Central difference of Phi in one coordinate of y or x under common random
// numbers; step 1e-2 (1+|y|). Throws StepTooSmallError when the difference
// is below the noise floor.
enum class ProbeAxis { X, Y };

struct GradientProbe {
    std::vector<double> derivative;  // d1 components
    double stderror = 0.0;
    double step = 0.0;
};

GradientProbe phi_gradient_probe(const CorrectorSetup& setup,
                                 std::span<const double> x,
                                 std::span<const double> y, ProbeAxis axis,
                                 int coordinate, double tol, long n,
                                 RngStream rs, int workers = 1);

// Hoelder probe for grad_x Phi: evaluates the gradient at pairs x, x + delta
// with |delta| in {2^-1, ..., 2^-6} under common random numbers and fits the
// exponent of ||grad_x Phi(x1) - grad_x Phi(x2)|| in |x1 - x2|.
struct HoelderProbe {
    std::vector<double> separations;
    std::vector<double> increments;
    double exponent = 0.0;
    bool degenerate = false;
};

HoelderProbe phi_x_hoelder_probe(const CorrectorSetup& setup,
                                 std::span<const double> x,
                                 std::span<const double> y, double tol, long n,
                                 RngStream rs, int workers = 1);

}  // namespace stablefast
