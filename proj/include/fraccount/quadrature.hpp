#pragma once

#include <functional>
#include <stdexcept>

namespace fraccount {

class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int intervals = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a,b] to absolute tolerance abs_tol.
// Largest-error-first bisection; throws quadrature_error with diagnostics
// if the budget is exhausted before the tolerance is met.
QuadResult integrate_gk(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_intervals = 2000);

}  // namespace fraccount
