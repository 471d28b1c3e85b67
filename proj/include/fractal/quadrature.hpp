#pragma once

#include <cstddef>
#include <functional>

namespace fractal {

// Settings for the numeric transform integrals.
struct QuadratureConfig {
    double truncation_tail = 1e-12; // stop where the integrand magnitude drops below this
    int panels = 4096;              // resolution of the composite / tanh-sinh grids
    enum class Scheme { TrapezoidInU, GaussLaguerreInU };
    Scheme scheme = Scheme::TrapezoidInU;

    void validate() const;
};

// Integrates f over the finite interval (a, b). The tanh-sinh substitution
// never evaluates f at the endpoints, so integrable endpoint singularities
// such as u^{p-1} with p > 0 are handled without special casing.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           int levels = 10);

// Composite trapezoid on a uniform grid, n panels.
double integrate_trapezoid(const std::function<double(double)>& f, double a, double b, int n);

} // namespace fractal
