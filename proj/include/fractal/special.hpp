#pragma once

#include "fractal/support.hpp"

namespace fractal {

// One-parameter Mittag-Leffler series E(sign * scale * u^beta), summed in
// the staircase variable u = S(t).
struct MLSpec {
    double beta = 1.0;  // series order, > 0
    double scale = 1.0; // magnitude of the argument coefficient
    int sign = -1;      // +1 or -1

    void validate() const;
    // signed coefficient a with E evaluated as E_beta(a * u^beta)
    double signed_scale() const { return sign * scale; }
};

// Gamma with fractal support: integral of e^{-S(t)} S(t)^{S(x)-1} d_F t,
// computed after the substitution u = S(t). Agrees with the classical
// Gamma of S(x).
double fractal_gamma(const Staircase& st, double x);

// Closed form Gamma(m1) Gamma(m2) / Gamma(m1 + m2).
double fractal_beta(double m1, double m2);

// E_beta(sign * scale * u^beta) for u >= 0. Direct series for small
// arguments; for the completely monotone branch (sign = -1) and large
// arguments a spectral integral representation keeps the decay monotone.
double mittag_leffler(const MLSpec& spec, double u);

// Derivative d/du of the above, by term-wise differentiation.
double mittag_leffler_du(const MLSpec& spec, double u);

double fractal_exp(const Staircase& st, double a, double t);
double fractal_sin(const Staircase& st, double a, double t);
double fractal_cos(const Staircase& st, double a, double t);

} // namespace fractal
