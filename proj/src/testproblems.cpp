#include "testproblems.hpp"

#include <cmath>

namespace stablefast {

namespace {

PairField field_1d(std::function<double(double, double)> fn) {
    PairField f;
    f.dx = f.dy = f.out_dim = 1;
    f.eval = [fn = std::move(fn)](std::span<const double> x,
                                  std::span<const double> y,
                                  std::span<double> out) {
        out[0] = fn(x[0], y[0]);
    };
    return f;
}

}  // namespace

bool is_known_problem(const std::string& id) {
    return id == "linear" || id == "example" || id == "bounded";
}

TestProblem make_test_problem(const std::string& id, double alpha) {
    TestProblem tp;
    tp.id = id;
    if (id == "linear") {
        tp.system = std::make_shared<SlowFastSystem>(
            1, 1, field_1d([](double x, double y) { return y - x; }),
            field_1d([](double x, double y) { return x - y; }), 1.0, alpha);
        tp.bbar_analytic = [](std::span<const double>, std::span<double> out) {
            out[0] = 0.0;
        };
        tp.x0 = {1.0};
        tp.y0 = {0.0};
    } else if (id == "example") {
        tp.system = std::make_shared<SlowFastSystem>(
            1, 1, field_1d([](double, double y) { return y; }),
            field_1d([](double, double y) { return -y; }), 1.0, alpha);
        tp.bbar_analytic = [](std::span<const double>, std::span<double> out) {
            out[0] = 0.0;
        };
        tp.x0 = {1.0};
        tp.y0 = {0.0};
    } else if (id == "bounded") {
        tp.system = std::make_shared<SlowFastSystem>(
            1, 1, field_1d([](double x, double y) {
                return std::sin(x) + std::sin(y) * std::exp(-0.5 * y * y);
            }),
            field_1d([](double, double y) { return -y; }), 1.0, alpha);
        tp.bbar_analytic = [](std::span<const double> x,
                              std::span<double> out) {
            out[0] = std::sin(x[0]);
        };
        tp.x0 = {1.0};
        tp.y0 = {1.0};
    } else {
        throw ConfigError("unknown test problem '" + id + "'", "problem");
    }
    return tp;
}

}  // namespace stablefast
