#pragma once

#include "fractal/descriptor.hpp"
#include "fractal/support.hpp"

#include <utility>
#include <vector>

namespace fractal {

// A function sampled on a grid that is uniform in the staircase variable
// u = S(t). Used by the finite-difference paths of the operators.
struct SampledFunction {
    std::vector<double> t_grid;
    std::vector<double> u_grid; // S(t_i), uniform spacing
    std::vector<double> values;

    static SampledFunction from_descriptor(const FunctionDescriptor& d, const Staircase& st,
                                           double t_lo, double t_hi, int samples);
    void validate() const;
    double u_step() const;
};

// F-derivative df/dS at t: analytic chain rule in u-space for descriptors,
// central difference for samples.
double local_fderivative(const FunctionDescriptor& d, const Staircase& st, double t);
double local_fderivative(const SampledFunction& f, std::size_t index);

// int_a^b f d_F t = int_{S(a)}^{S(b)} f(u) du
double fractal_integral(const FunctionDescriptor& d, const Staircase& st, double a, double b);

// Riemann-Liouville fractal integral of order beta at x:
// (1/Gamma(beta)) int_0^{S(x)} (S(x)-u)^{beta-1} f(u) du,
// product integration (exact kernel moments against piecewise-linear data).
double rl_integral(const FunctionDescriptor& d, const Staircase& st, double beta, double x,
                   int panels = 2048);

// Riemann-Liouville fractal derivative: differentiate the order (n - beta)
// integral n times in u, n = ceil(beta).
double rl_derivative(const FunctionDescriptor& d, const Staircase& st, double beta, double x,
                     int panels = 2048);

// Caputo fractal derivative:
// (1/Gamma(n-beta)) int_0^{S(x)} (S(x)-u)^{n-beta-1} f^{(n)}(u) du, n = ceil(beta).
double caputo_derivative(const FunctionDescriptor& d, const Staircase& st, double beta, double x,
                         int panels = 2048);

// Singular-kernel derivative of order gamma in [n-1, n):
// (1/Gamma(n-gamma)) int_0^{S(x)} (S(x)-u)^{n-gamma-1} f^{(n)}(u) du.
double n_derivative(const FunctionDescriptor& d, const Staircase& st, double gamma, double x,
                    int panels = 2048);

// Closed-form power rule for the above on f(t) = S(t)^p:
// (Gamma(p+1)/Gamma(p-gamma+1), p-gamma) when p > n-1, else (0, 0).
std::pair<double, double> n_derivative_power_rule(double p, double gamma);

// Exponential-kernel derivative, gamma in [0,1), normalization n_gamma:
// (n_gamma/(1-gamma)) int_0^{S(x)} e^{-gamma (S(x)-u)/(1-gamma)} f'(u) du,
// trapezoid product integration with exact exponential weights.
double wsk_derivative(const FunctionDescriptor& d, const Staircase& st, double gamma,
                      double n_gamma, double x, int panels = 2048);

} // namespace fractal
