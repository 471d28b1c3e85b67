#pragma once

#include "fractal/descriptor.hpp"
#include "fractal/quadrature.hpp"
#include "fractal/support.hpp"
#include "fractal/transform_expr.hpp"

#include <limits>
#include <vector>

namespace fractal {

// Rule-engine result: the transform as a rational expression in s = S(v),
// plus the validity window on s when one exists (e.g. s < 1/a for e^{a u}).
struct RuleResult {
    TransformExpr expr;
    double s_max = std::numeric_limits<double>::infinity();
    double s_min = 0.0;
};

RuleResult sumudu_rule(const FunctionDescriptor& d);
RuleResult laplace_rule(const FunctionDescriptor& d);

// Quadrature evaluation in the staircase variable. The (st, v) overloads
// resolve s = S(v) and enforce the rule's validity window; the _s overloads
// take the transform argument directly.
double sumudu_numeric_s(const FunctionDescriptor& d, double s, const QuadratureConfig& cfg = {});
double sumudu_numeric(const FunctionDescriptor& d, const Staircase& st, double v,
                      const QuadratureConfig& cfg = {});
double laplace_numeric_s(const FunctionDescriptor& d, double s, const QuadratureConfig& cfg = {});
double laplace_numeric(const FunctionDescriptor& d, const Staircase& st, double v,
                       const QuadratureConfig& cfg = {});

// Transform-domain rules for the derivative/integral operators.
TransformExpr transform_of_derivative(const TransformExpr& sf, double f0);
TransformExpr transform_of_integral(const TransformExpr& sf);
TransformExpr transform_rl_integral(const TransformExpr& sf, double beta);
TransformExpr transform_rl_derivative(const TransformExpr& sf, double beta,
                                      const std::vector<double>& init_terms);
TransformExpr transform_caputo(const TransformExpr& sf, double beta,
                               const std::vector<double>& derivs_at_0);
TransformExpr transform_wsk(const TransformExpr& sf, double gamma, double f0, double n_gamma);

// Convolution in the staircase variable, evaluated pointwise.
double convolution_numeric_u(const FunctionDescriptor& f, const FunctionDescriptor& g, double u);
double convolution_numeric(const FunctionDescriptor& f, const FunctionDescriptor& g,
                           const Staircase& st, double t);

// Pattern-based inversion of table shapes. Throws std::domain_error with
// "unrecognized transform shape" when no pattern applies; never guesses.
FunctionDescriptor inverse_sumudu_rule(const TransformExpr& e);

} // namespace fractal
