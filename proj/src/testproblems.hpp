#pragma once

#include <memory>
#include <string>

#include "averaging.hpp"
#include "multiscale.hpp"

namespace stablefast {

// Built-in named systems so experiments are reproducible without
// user-supplied code.
//
//   linear  : b(x,y) = y - x,                  f(x,y) = x - y,  bbar = 0
//   example : b(x,y) = y,                      f(x,y) = -y,     bbar = 0
//             (the exactly solvable pair; Phi(x,y) = y)
//   bounded : b(x,y) = sin(x) + sin(y)e^{-y^2/2}, f(x,y) = -y,
//             bbar(x) = sin(x)  (the odd y-term averages to zero)
//
// All are d1 = d2 = 1 with beta = 1. Hoelder metadata (gamma, delta) is
// recorded and trusted, not enforced.
struct TestProblem {
    std::string id;
    std::shared_ptr<SlowFastSystem> system;
    BbarProvider bbar_analytic;
    std::vector<double> x0;
    std::vector<double> y0;
    double gamma_meta = 0.6;
    double delta_meta = 0.5;
};

TestProblem make_test_problem(const std::string& id, double alpha);

bool is_known_problem(const std::string& id);

}  // namespace stablefast
