#pragma once

#include <span>
#include <vector>

#include "path.hpp"
#include "rng.hpp"
#include "stable.hpp"

namespace stablefast {

// Parameters of the exactly solvable linear fast-slow pair: slow drift b=y,
// fast drift f=-y, Y_0 = 0.
struct OracleParams {
    double alpha;
    double eps;
    double t;
    double p;

    OracleParams(double alpha_, double eps_, double t_, double p_)
        : alpha(alpha_), eps(eps_), t(t_), p(p_) {
        if (!(alpha > 1.0 && alpha < 2.0))
            throw DomainError("OracleParams: alpha in (1,2) required");
        if (!(eps > 0.0) || !(t > 0.0))
            throw DomainError("OracleParams: eps and t must be > 0");
        if (!(p > 0.0 && p < alpha))
            throw DomainError("OracleParams: p in (0,alpha) required");
    }
};

// Stable scale of Z^eps_t = int_0^t Y^eps_s ds:
//   sigma = eps^{1-1/alpha} * [ int_0^t (1 - e^{-r/eps})^alpha dr ]^{1/alpha},
// inner integral by adaptive quadrature to 1e-8 relative tolerance.
double sigma_scale(const OracleParams& params);

// Stationary scale of dY = -c Y dt + dL: the law of int_0^inf e^{-cs} dL_s is
// symmetric alpha-stable with scale (1/(c*alpha))^{1/alpha}.
double stationary_ou_scale(double alpha, double c = 1.0);

// Per-step noise scale of the exact OU recursion over step h at time scale
// eps: [(1 - e^{-alpha h/eps}) / alpha]^{1/alpha}.
double exact_ou_step_scale(double alpha, double eps, double h);

// Exact-in-law sample of Y^eps on the grid: Y_{k+1} = e^{-h/eps} Y_k + xi_k
// with xi_k symmetric alpha-stable at the step scale above. Y_0 = 0.
Path exact_ou_path(double alpha, double eps, TimeGrid grid, RngStream rs);

struct MomentRatioPoint {
    double eps = 0.0;
    double moment = 0.0;         // E|Z^eps_t|^p estimate
    double ratio = 0.0;          // moment / sigma(eps,t)^p
    double stderror = 0.0;       // stderr of the ratio
    double moment_stderror = 0.0;
};

struct OracleMomentResult {
    std::vector<MomentRatioPoint> points;
    double c_direct = 0.0;         // E|S|^p over standard stable draws
    double c_direct_stderror = 0.0;
};

// Ratio E|Z^eps_t|^p / sigma(eps,t)^p per eps (the moment identity makes it
// the eps-independent constant C_{alpha,p}), plus the direct estimate of
// C_{alpha,p} from standard draws. Z is a trapezoid over the exact OU path
// with h <= eps/20.
OracleMomentResult oracle_moment_check(double alpha, double p, double t,
                                       std::span<const double> eps_list,
                                       long n_paths, RngStream base,
                                       int workers = 1);

}  // namespace stablefast
