#pragma once

#include "fractal/descriptor.hpp"
#include "fractal/support.hpp"
#include "fractal/transform_expr.hpp"

#include <string>
#include <vector>

namespace fractal {

enum class ModelTag { CaputoNoExp, CaputoExp, WskNoExp, WskExp };

ModelTag model_tag_from_string(const std::string& name); // caputo|caputo-exp|wsk|wsk-exp
std::string to_string(ModelTag tag);

// Price-adjustment model coefficients. Demand q_d = d0 - d1 p (+ d2 Dp),
// supply q_s = -s0 + s1 p (- s2 Dp); lambda/k are the adjustment speeds of
// the Caputo/exponential-kernel formulations.
struct ModelParams {
    double d0 = 10.0, d1 = 2.0, s0 = 2.0, s1 = 1.0;
    double d2 = 0.0, s2 = 0.0; // expectation sensitivities
    double lambda = 1.0;       // Caputo adjustment speed, > 0
    double k = 1.0;            // exponential-kernel adjustment speed, > 0
    double beta = 0.7;         // Caputo order, in (0,1)
    double gamma = 0.5;        // exponential-kernel order, in [0,1)
    double n_gamma = 1.0;      // kernel normalization N(gamma)
    double p0 = 0.0;           // initial price
    bool expectations = false;

    void validate(ModelTag tag) const;
};

struct PriceTrajectory {
    std::vector<double> t_grid;
    std::vector<double> p_values;
    ModelTag model_tag = ModelTag::CaputoNoExp;
    double equilibrium = 0.0;
    bool stable = true; // false when the closed form grows away from p*
};

double equilibrium_price(const ModelParams& params);

// Closed-form solution as a descriptor in u = S(t). as_printed switches the
// no-expectations Caputo constant term to its documented alternate value.
FunctionDescriptor solution_descriptor(const ModelParams& params, ModelTag tag,
                                       bool as_printed = false);

PriceTrajectory solve_caputo(const ModelParams& params, const Staircase& st,
                             const std::vector<double>& t_grid);
PriceTrajectory solve_wsk(const ModelParams& params, const Staircase& st,
                          const std::vector<double>& t_grid);

// Substitutes the Sumudu transform of the closed form into the transformed
// model equation and returns the simplified residual; structurally zero for
// a correct solution. A nonzero residual is a result, not an error.
TransformExpr transform_residual(const ModelParams& params, ModelTag tag,
                                 bool as_printed = false);

// Independent numeric check: L1 product integration (Caputo models) or
// product integration of the exponential-kernel Volterra equation (wsk
// models), on a grid uniform in u = S(t) up to t_max.
PriceTrajectory forward_solve(const ModelParams& params, const Staircase& st, ModelTag tag,
                              int steps, double t_max = 5.0);

enum class TrajectoryFormat { Csv, Json };

std::string emit_trajectory(const PriceTrajectory& traj, const ModelParams& params,
                            TrajectoryFormat format);

} // namespace fractal
