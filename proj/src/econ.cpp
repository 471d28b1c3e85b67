#include "fractal/econ.hpp"

#include "fractal/transforms.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fractal {

namespace {

double fmt12(double v) { // deterministic 12-significant-digit rounding
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string str12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Derived {
    double D0, D1, D2;
};

Derived derived(const ModelParams& p) { return {p.d0 + p.s0, p.d1 + p.s1, p.d2 + p.s2}; }

} // namespace

ModelTag model_tag_from_string(const std::string& name) {
    if (name == "caputo")
        return ModelTag::CaputoNoExp;
    if (name == "caputo-exp")
        return ModelTag::CaputoExp;
    if (name == "wsk")
        return ModelTag::WskNoExp;
    if (name == "wsk-exp")
        return ModelTag::WskExp;
    throw std::invalid_argument("unknown model tag: " + name);
}

std::string to_string(ModelTag tag) {
    switch (tag) {
    case ModelTag::CaputoNoExp: return "caputo";
    case ModelTag::CaputoExp: return "caputo-exp";
    case ModelTag::WskNoExp: return "wsk";
    case ModelTag::WskExp: return "wsk-exp";
    }
    throw std::logic_error("bad model tag");
}

void ModelParams::validate(ModelTag tag) const {
    if (!(d0 > 0.0 && d1 > 0.0 && s0 > 0.0 && s1 > 0.0))
        throw std::invalid_argument("demand/supply coefficients must be positive");
    if (!(p0 >= 0.0))
        throw std::invalid_argument("p0 must be nonnegative");
    const Derived dd = derived(*this);
    if (!(dd.D1 > 0.0))
        throw std::invalid_argument("d1 + s1 must be positive");
    switch (tag) {
    case ModelTag::CaputoNoExp:
    case ModelTag::CaputoExp:
        if (!(lambda > 0.0))
            throw std::invalid_argument("lambda must be positive");
        if (!(beta > 0.0 && beta <= 1.0))
            throw std::invalid_argument("beta must lie in (0,1]");
        if (tag == ModelTag::CaputoExp && dd.D2 == 0.0)
            throw std::invalid_argument("d2 + s2 must be nonzero for the expectations model");
        break;
    case ModelTag::WskNoExp:
    case ModelTag::WskExp:
        if (!(k > 0.0))
            throw std::invalid_argument("k must be positive");
        if (!(gamma >= 0.0 && gamma < 1.0))
            throw std::invalid_argument("gamma must lie in [0,1)");
        if (tag == ModelTag::WskExp) {
            if (dd.D2 == 0.0)
                throw std::invalid_argument("d2 + s2 must be nonzero for the expectations model");
            if (n_gamma * dd.D2 - (1.0 - gamma) * dd.D1 == 0.0)
                throw std::invalid_argument("singular denominator: N(gamma)(d2+s2) = (1-gamma)(d1+s1)");
        }
        break;
    }
}

double equilibrium_price(const ModelParams& params) {
    const Derived dd = derived(params);
    return dd.D0 / dd.D1;
}

FunctionDescriptor solution_descriptor(const ModelParams& params, ModelTag tag, bool as_printed) {
    params.validate(tag);
    const Derived dd = derived(params);
    const double pstar = dd.D0 / dd.D1;
    switch (tag) {
    case ModelTag::CaputoNoExp: {
        const double A = params.lambda * dd.D1;
        const double P = as_printed ? params.lambda * pstar : pstar;
        return FunctionDescriptor::sum({FunctionDescriptor::constant(P),
                                        FunctionDescriptor::mittag_leffler(params.beta, A,
                                                                           params.p0 - P)});
    }
    case ModelTag::CaputoExp: {
        const double B = dd.D1 / dd.D2; // E(+B u^beta)
        return FunctionDescriptor::sum({FunctionDescriptor::constant(pstar),
                                        FunctionDescriptor::mittag_leffler(params.beta, -B,
                                                                           params.p0 - pstar)});
    }
    case ModelTag::WskNoExp: {
        const double M = params.n_gamma + params.k * (1.0 - params.gamma) * dd.D1;
        const double J = (params.n_gamma * params.p0 + params.k * (1.0 - params.gamma) * dd.D0) / M;
        const double c = params.k * params.gamma * dd.D1 / M;
        return FunctionDescriptor::sum({FunctionDescriptor::constant(pstar),
                                        FunctionDescriptor::exponential(-c, J - pstar)});
    }
    case ModelTag::WskExp: {
        const double M2 = params.n_gamma * dd.D2 - (1.0 - params.gamma) * dd.D1;
        const double X = (params.n_gamma * dd.D2 * params.p0 - (1.0 - params.gamma) * dd.D0) / M2;
        const double c2 = params.gamma * dd.D1 / M2;
        return FunctionDescriptor::sum({FunctionDescriptor::constant(pstar),
                                        FunctionDescriptor::exponential(c2, X - pstar)});
    }
    }
    throw std::logic_error("bad model tag");
}

namespace {

bool closed_form_stable(const ModelParams& params, ModelTag tag) {
    const Derived dd = derived(params);
    switch (tag) {
    case ModelTag::CaputoNoExp:
        return true;
    case ModelTag::CaputoExp:
        return dd.D1 / dd.D2 < 0.0;
    case ModelTag::WskNoExp:
        return true;
    case ModelTag::WskExp:
        return params.gamma * dd.D1 / (params.n_gamma * dd.D2 - (1.0 - params.gamma) * dd.D1) <=
               0.0;
    }
    return true;
}

PriceTrajectory eval_closed_form(const ModelParams& params, const Staircase& st,
                                 const std::vector<double>& t_grid, ModelTag tag) {
    if (t_grid.empty())
        throw std::invalid_argument("empty time grid");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] < t_grid[i + 1]))
            throw std::invalid_argument("time grid must be increasing");
    const FunctionDescriptor d = solution_descriptor(params, tag);
    PriceTrajectory traj;
    traj.t_grid = t_grid;
    traj.model_tag = tag;
    traj.equilibrium = equilibrium_price(params);
    traj.stable = closed_form_stable(params, tag);
    traj.p_values.reserve(t_grid.size());
    for (double t : t_grid)
        traj.p_values.push_back(eval_descriptor(d, st, t));
    return traj;
}

} // namespace

PriceTrajectory solve_caputo(const ModelParams& params, const Staircase& st,
                             const std::vector<double>& t_grid) {
    return eval_closed_form(params, st, t_grid,
                            params.expectations ? ModelTag::CaputoExp : ModelTag::CaputoNoExp);
}

PriceTrajectory solve_wsk(const ModelParams& params, const Staircase& st,
                          const std::vector<double>& t_grid) {
    return eval_closed_form(params, st, t_grid,
                            params.expectations ? ModelTag::WskExp : ModelTag::WskNoExp);
}

TransformExpr transform_residual(const ModelParams& params, ModelTag tag, bool as_printed) {
    const Derived dd = derived(params);
    const TransformExpr P = sumudu_rule(solution_descriptor(params, tag, as_printed)).expr;
    switch (tag) {
    case ModelTag::CaputoNoExp: {
        // s^{-beta}(P - p0) = lambda (D0 - D1 P)
        TransformExpr lhs = transform_caputo(P, params.beta, {params.p0});
        TransformExpr rhs = expr_sub(TransformExpr::constant(params.lambda * dd.D0),
                                     expr_scale(params.lambda * dd.D1, P));
        return expr_sub(lhs, rhs);
    }
    case ModelTag::CaputoExp: {
        // D2 s^{-beta}(P - p0) = D1 P - D0
        TransformExpr lhs = expr_scale(dd.D2, transform_caputo(P, params.beta, {params.p0}));
        TransformExpr rhs =
            expr_sub(expr_scale(dd.D1, P), TransformExpr::constant(dd.D0));
        return expr_sub(lhs, rhs);
    }
    case ModelTag::WskNoExp: {
        TransformExpr lhs = transform_wsk(P, params.gamma, params.p0, params.n_gamma);
        TransformExpr rhs = expr_sub(TransformExpr::constant(params.k * dd.D0),
                                     expr_scale(params.k * dd.D1, P));
        return expr_sub(lhs, rhs);
    }
    case ModelTag::WskExp: {
        TransformExpr lhs =
            expr_scale(dd.D2, transform_wsk(P, params.gamma, params.p0, params.n_gamma));
        TransformExpr rhs =
            expr_sub(expr_scale(dd.D1, P), TransformExpr::constant(dd.D0));
        return expr_sub(lhs, rhs);
    }
    }
    throw std::logic_error("bad model tag");
}

namespace {

// L1 product-integration scheme for D^beta p = rhs_a - rhs_b p on the given
// u nodes (implicit in p_n). Piecewise-linear p, exact kernel moments, so a
// graded mesh absorbs the u^beta startup singularity of the solution.
std::vector<double> l1_scheme(double beta, double rhs_a, double rhs_b, double p0,
                              const std::vector<double>& u) {
    const int steps = static_cast<int>(u.size()) - 1;
    std::vector<double> p(steps + 1);
    p[0] = p0;
    if (beta >= 1.0) { // classical backward Euler limit
        for (int n = 1; n <= steps; ++n) {
            const double h = u[n] - u[n - 1];
            p[n] = (p[n - 1] + h * rhs_a) / (1.0 + h * rhs_b);
        }
        return p;
    }
    const double g = std::tgamma(1.0 - beta);
    auto moment = [&](int n, int j) { // int_{u_j}^{u_{j+1}} (u_n - t)^{-beta} dt
        return (std::pow(u[n] - u[j], 1.0 - beta) - std::pow(u[n] - u[j + 1], 1.0 - beta)) /
               (1.0 - beta);
    };
    for (int n = 1; n <= steps; ++n) {
        double hist = 0.0;
        for (int j = 0; j + 1 < n; ++j)
            hist += (p[j + 1] - p[j]) / (u[j + 1] - u[j]) * moment(n, j);
        const double w = moment(n, n - 1) / (u[n] - u[n - 1]) / g;
        p[n] = (rhs_a - hist / g + w * p[n - 1]) / (w + rhs_b);
    }
    return p;
}

// Product integration for the exponential-kernel Volterra equation
// (N/(1-gamma)) [ e^{-g u_n}(q0 - p0) + int_0^{u_n} e^{-g(u_n-u)} q'(u) du ]
//   = eq_a - eq_b q_n,
// piecewise-linear q, jump q0 at u = 0+ solved from the n = 0 equation.
std::vector<double> wsk_scheme(double gamma, double n_gamma, double eq_a, double eq_b, double p0,
                               double h, int steps) {
    const double scale = n_gamma / (1.0 - gamma);
    const double g = gamma / (1.0 - gamma);
    std::vector<double> q(steps + 1);
    q[0] = (scale * p0 + eq_a) / (scale + eq_b); // jump value at t = 0+
    // panel weight for u' constant on [u_j, u_{j+1}]:
    //   w_m = (e^{-g(m-1)h} - e^{-g m h})/(g h), m = n - j panels back
    auto weight = [&](int m) {
        if (g == 0.0)
            return 1.0;
        return (std::exp(-g * (m - 1) * h) - std::exp(-g * m * h)) / (g * h);
    };
    for (int n = 1; n <= steps; ++n) {
        double acc = std::exp(-g * n * h) * (q[0] - p0);
        for (int j = 0; j + 1 < n; ++j)
            acc += (q[j + 1] - q[j]) * weight(n - j);
        const double w1 = weight(1);
        // scale*(acc + (q_n - q_{n-1}) w1) = eq_a - eq_b q_n
        q[n] = (eq_a - scale * acc + scale * w1 * q[n - 1]) / (scale * w1 + eq_b);
    }
    return q;
}

} // namespace

PriceTrajectory forward_solve(const ModelParams& params, const Staircase& st, ModelTag tag,
                              int steps, double t_max) {
    if (steps < 16)
        throw std::invalid_argument("forward_solve: need at least 16 steps");
    params.validate(tag);
    const Derived dd = derived(params);
    const double U = st.eval(t_max);
    if (!(U > 0.0))
        throw std::invalid_argument("forward_solve: S(t_max) must be positive");
    const double h = U / steps;
    const bool caputo_family = tag == ModelTag::CaputoNoExp || tag == ModelTag::CaputoExp;
    std::vector<double> u(steps + 1);
    if (caputo_family && params.beta < 1.0) {
        // quadratic grading toward u = 0 for the L1 scheme
        for (int n = 0; n <= steps; ++n) {
            const double r = static_cast<double>(n) / steps;
            u[n] = U * r * r;
        }
    } else {
        for (int n = 0; n <= steps; ++n)
            u[n] = n * h;
    }
    u.back() = U;
    std::vector<double> p;
    switch (tag) {
    case ModelTag::CaputoNoExp:
        p = l1_scheme(params.beta, params.lambda * dd.D0, params.lambda * dd.D1, params.p0, u);
        break;
    case ModelTag::CaputoExp:
        // D^beta p = (D1 p - D0)/D2
        p = l1_scheme(params.beta, -dd.D0 / dd.D2, -dd.D1 / dd.D2, params.p0, u);
        break;
    case ModelTag::WskNoExp:
        p = wsk_scheme(params.gamma, params.n_gamma, params.k * dd.D0, params.k * dd.D1,
                       params.p0, h, steps);
        break;
    case ModelTag::WskExp:
        p = wsk_scheme(params.gamma, params.n_gamma, -dd.D0 / dd.D2, -dd.D1 / dd.D2, params.p0, h,
                       steps);
        break;
    }
    PriceTrajectory traj;
    traj.model_tag = tag;
    traj.equilibrium = equilibrium_price(params);
    traj.stable = closed_form_stable(params, tag);
    traj.t_grid.resize(steps + 1);
    for (int n = 0; n <= steps; ++n)
        traj.t_grid[n] = st.inverse(u[n]);
    traj.p_values = std::move(p);
    return traj;
}

std::string emit_trajectory(const PriceTrajectory& traj, const ModelParams& params,
                            TrajectoryFormat format) {
    if (traj.t_grid.empty() || traj.t_grid.size() != traj.p_values.size())
        throw std::invalid_argument("emit_trajectory: empty or inconsistent trajectory");
    if (format == TrajectoryFormat::Csv) {
        std::string out = "t,p,equilibrium\n";
        for (std::size_t i = 0; i < traj.t_grid.size(); ++i)
            out += str12(traj.t_grid[i]) + "," + str12(traj.p_values[i]) + "," +
                   str12(traj.equilibrium) + "\n";
        return out;
    }
    nlohmann::ordered_json j;
    j["model"] = to_string(traj.model_tag);
    j["params_echo"] = {{"d0", fmt12(params.d0)},     {"d1", fmt12(params.d1)},
                        {"s0", fmt12(params.s0)},     {"s1", fmt12(params.s1)},
                        {"d2", fmt12(params.d2)},     {"s2", fmt12(params.s2)},
                        {"lambda", fmt12(params.lambda)}, {"k", fmt12(params.k)},
                        {"beta", fmt12(params.beta)}, {"gamma", fmt12(params.gamma)},
                        {"n_gamma", fmt12(params.n_gamma)}, {"p0", fmt12(params.p0)},
                        {"expectations", params.expectations}};
    nlohmann::ordered_json ts = nlohmann::ordered_json::array();
    nlohmann::ordered_json ps = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < traj.t_grid.size(); ++i) {
        ts.push_back(fmt12(traj.t_grid[i]));
        ps.push_back(fmt12(traj.p_values[i]));
    }
    j["t"] = std::move(ts);
    j["p"] = std::move(ps);
    j["p_star"] = fmt12(traj.equilibrium);
    j["stable"] = traj.stable;
    return j.dump(2) + "\n";
}

} // namespace fractal
