#pragma once

#include <functional>

namespace hyperwave::quadrature {

struct Result {
    double value = 0.0;
    double error = 0.0;  // accumulated error estimate
    long evaluations = 0;
};

/// Adaptive Gauss7/Kronrod15 integration of f over [a, b]. Subdivides
/// until the local Kronrod error estimate satisfies
/// err <= max(abs_tol, rel_tol * |integral|) distributed over segments.
/// Throws a numeric error if the subdivision budget is exhausted first.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10);

}  // namespace hyperwave::quadrature
