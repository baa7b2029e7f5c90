#ifndef GAMOW_QUADRATURE_HPP
#define GAMOW_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace gamow::quad {

struct Result {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    long evaluations = 0;
};

struct Tolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 60;
};

/// Adaptive Gauss-Kronrod 7/15 over [a, b] for a complex-valued integrand.
Result integrate(const std::function<std::complex<double>(double)>& f,
                 double a, double b, const Tolerances& tol = {});

/// Integral over [0, inf) via the map w = t/(1-t); breakpoints are given in
/// w and become panel boundaries.  The integrand must decay faster than 1/w.
Result integrate_semi_infinite(const std::function<std::complex<double>(double)>& f,
                               std::vector<double> breakpoints,
                               const Tolerances& tol = {});

/*
 * Cauchy principal value on [0, inf) with a simple pole at x0 > 0:
 *
 *        / inf  f(w)
 *   PV  |      ------ dw
 *        / 0   w - x0
 *
 * computed by subtracting f(x0) on a window [a,b] around x0,
 *
 *   I = int_0^a + int_b^inf  f(w)/(w-x0) dw
 *     + int_a^b (f(w) - f(x0))/(w-x0) dw + f(x0) log((b-x0)/(x0-a)),
 *
 * so the singularity is removed analytically instead of cancelled
 * numerically.  df supplies f' for evaluation at the removable point.
 */
Result principal_value(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double x0,
                       std::vector<double> breakpoints,
                       const Tolerances& tol = {});

}  // namespace gamow::quad

#endif
