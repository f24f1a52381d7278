#pragma once

#include <functional>

#include "cgur/errors.hpp"

namespace cgur::num {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
};

struct QuadratureResult {
    double value;
    double err_est;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over the finite interval
/// [a, b]. Subdivides worst-error-first until the accumulated error estimate
/// drops below max(abs_tol, rel_tol*|value|). Throws std::invalid_argument
/// for a degenerate or non-finite interval, and ToleranceNotMet (carrying the
/// best estimate) when the subdivision budget runs out.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Error function. Exactly odd: erf(-x) == -erf(x) bit for bit.
double erf(double x);

/// Expands [center - h, center + h] by doubling h until the interval holds
/// all but mass_tol of the pdf's probability mass. The pdf should be roughly
/// centered on `center` (pass the distribution mean). Throws
/// std::invalid_argument if mass_tol <= 0, ToleranceNotMet at the expansion
/// cap.
Interval tail_bound_interval(const std::function<double(double)>& pdf, double center,
                             double mass_tol, const QuadratureSpec& spec = {},
                             double initial_half_width = 1.0);

}  // namespace cgur::num
