#include "stable.hpp"

#include <cmath>

namespace stablefast {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

inline void check_alpha(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw DomainError("alpha must lie in (1,2), got " +
                          std::to_string(alpha));
}

}  // namespace

double sample_sym_stable_1d(double alpha, Philox& rng) {
    check_alpha(alpha);
    // CMS, symmetric case: V uniform on (-pi/2, pi/2), W ~ Exp(1).
    const double v = kPi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    const double inv_alpha = 1.0 / alpha;
    return std::sin(alpha * v) / std::pow(std::cos(v), inv_alpha) *
           std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) * inv_alpha);
}

double sample_subordinator_increment(double alpha, double dt, Philox& rng) {
    check_alpha(alpha);
    if (!(dt > 0.0))
        throw DomainError("subordinator increment: dt must be > 0");
    // One-sided CMS (beta = 1) at index rho = alpha/2 in (1/2, 1). The scale
    // (dt cos(pi rho / 2))^{1/rho} that turns the standard draw into Laplace
    // transform exp(-dt lambda^rho) cancels the CMS prefactor, leaving:
    const double rho = 0.5 * alpha;
    const double v = kPi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    const double a = rho * (v + 0.5 * kPi);
    return std::pow(dt, 1.0 / rho) * std::sin(a) /
           std::pow(std::cos(v), 1.0 / rho) *
           std::pow(std::cos(v - a) / w, (1.0 - rho) / rho);
}

void sample_isotropic_increment(const StableSpec& spec, double dt, Philox& rng,
                                std::span<double> out) {
    if (!(dt > 0.0))
        throw DomainError("isotropic increment: dt must be > 0");
    if (out.size() != std::size_t(spec.dim))
        throw DomainError("isotropic increment: output span size mismatch");
    if (spec.dim == 1) {
        out[0] = std::pow(dt, 1.0 / spec.alpha) *
                 sample_sym_stable_1d(spec.alpha, rng);
        return;
    }
    const double s = sample_subordinator_increment(spec.alpha, dt, rng);
    const double r = std::sqrt(2.0 * s);
    for (int i = 0; i < spec.dim; ++i) out[i] = r * rng.gaussian();
}

std::vector<double> increments_on_grid(const StableSpec& spec, long n, double h,
                                       RngStream rs) {
    if (n < 1) throw DomainError("increments_on_grid: n must be >= 1");
    if (!(h > 0.0)) throw DomainError("increments_on_grid: h must be > 0");
    Philox rng(rs);
    std::vector<double> out(std::size_t(n) * spec.dim);
    for (long k = 0; k < n; ++k)
        sample_isotropic_increment(spec, h, rng,
                                   {out.data() + k * spec.dim,
                                    std::size_t(spec.dim)});
    return out;
}

double sample_sym_stable_1d(double alpha, RngStream rs) {
    Philox rng(rs);
    return sample_sym_stable_1d(alpha, rng);
}

double sample_subordinator_increment(double alpha, double dt, RngStream rs) {
    Philox rng(rs);
    return sample_subordinator_increment(alpha, dt, rng);
}

}  // namespace stablefast
