// fractal: staircase tabulation, transform evaluation, operator evaluation
// and price-adjustment model simulation on fractal supports.

#include "fractal/econ.hpp"
#include "fractal/operators.hpp"
#include "fractal/special.hpp"
#include "fractal/support.hpp"
#include "fractal/transforms.hpp"
#include "fractal/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitVerifyFail = 3;

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// --config FILE supplies defaults; explicitly passed flags win.
void apply_config(CLI::App* cmd, const std::string& path) {
    if (path.empty())
        return;
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("--config", "cannot open " + path);
    nlohmann::json j;
    in >> j;
    for (auto it = j.begin(); it != j.end(); ++it) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + it.key());
        if (!opt || opt->count() > 0)
            continue;
        if (it.value().is_boolean()) {
            if (!it.value().get<bool>())
                continue;
            opt->add_result("true");
        } else if (it.value().is_string()) {
            opt->add_result(it.value().get<std::string>());
        } else {
            opt->add_result(it.value().dump());
        }
        opt->run_callback();
    }
}

struct SupportOpts {
    std::string support = "line";
    double removal_ratio = 1.0 / 3.0;
    double alpha = -1.0; // optional override, line support only

    void attach(CLI::App* cmd) {
        cmd->add_option("--support", support, "fractal support: line|cantor")
            ->check(CLI::IsMember({"line", "cantor"}));
        cmd->add_option("--removal-ratio", removal_ratio,
                        "removed middle fraction of the Cantor family");
        cmd->add_option("--alpha", alpha, "staircase order override (line support only)");
    }

    fractal::Staircase build() const {
        if (support == "cantor") {
            if (alpha > 0.0)
                throw CLI::ValidationError("--alpha",
                                           "the Cantor support fixes alpha; no override");
            return fractal::Staircase::build(fractal::FractalSupport::cantor(removal_ratio));
        }
        fractal::FractalSupport sup = fractal::FractalSupport::identity_line();
        if (alpha > 0.0)
            sup.alpha = alpha;
        return fractal::Staircase::build(sup);
    }
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw CLI::ValidationError("--out", "cannot write " + out_path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal calculus engine"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv";

    // --- staircase -------------------------------------------------------
    auto* sc_stair = app.add_subcommand("staircase", "tabulate the integral staircase S(x)");
    SupportOpts stair_sup;
    stair_sup.attach(sc_stair);
    double stair_lo = 0.0, stair_hi = 1.0;
    int stair_samples = 101;
    sc_stair->add_option("--lo", stair_lo, "range start");
    sc_stair->add_option("--hi", stair_hi, "range end");
    sc_stair->add_option("--samples", stair_samples, "number of grid points");

    // --- transform -------------------------------------------------------
    auto* sc_tr = app.add_subcommand("transform", "Sumudu/Laplace transform of a descriptor");
    SupportOpts tr_sup;
    tr_sup.attach(sc_tr);
    std::string tr_expr, tr_kind = "sumudu", tr_mode = "rule";
    std::vector<double> tr_v;
    sc_tr->add_option("--expr", tr_expr, "descriptor, e.g. 'exp(-1)' or '2*pow(0.5)+const'")
        ->required();
    sc_tr->add_option("--kind", tr_kind, "sumudu|laplace")
        ->check(CLI::IsMember({"sumudu", "laplace"}));
    sc_tr->add_option("--mode", tr_mode, "rule|numeric")
        ->check(CLI::IsMember({"rule", "numeric"}));
    sc_tr->add_option("--v", tr_v, "transform evaluation points (numeric mode)");

    // --- operator --------------------------------------------------------
    auto* sc_op = app.add_subcommand("operator", "evaluate a fractal derivative/integral");
    SupportOpts op_sup;
    op_sup.attach(sc_op);
    std::string op_name, op_expr;
    double op_order = 0.5, op_ngamma = 1.0, op_lo = 0.0, op_hi = 1.0;
    std::vector<double> op_x;
    sc_op->add_option("--op", op_name,
                      "fderiv|integral|rl-integral|rl-derivative|caputo|n-derivative|wsk")
        ->required()
        ->check(CLI::IsMember({"fderiv", "integral", "rl-integral", "rl-derivative", "caputo",
                               "n-derivative", "wsk"}));
    sc_op->add_option("--expr", op_expr, "descriptor text")->required();
    sc_op->add_option("--order", op_order, "operator order (beta or gamma)");
    sc_op->add_option("--n-gamma", op_ngamma, "normalization N(gamma) for the wsk operator");
    sc_op->add_option("--lo", op_lo, "integration lower limit (integral op)");
    sc_op->add_option("--hi", op_hi, "integration upper limit (integral op)");
    sc_op->add_option("--x", op_x, "evaluation points");

    // --- solve -----------------------------------------------------------
    auto* sc_solve = app.add_subcommand("solve", "price-adjustment model trajectory");
    SupportOpts solve_sup;
    solve_sup.attach(sc_solve);
    std::string model = "caputo";
    fractal::ModelParams params;
    double t_max = 5.0;
    int steps = 200;
    bool verify = false, as_printed = false;
    sc_solve->add_option("--model", model, "caputo|caputo-exp|wsk|wsk-exp")
        ->check(CLI::IsMember({"caputo", "caputo-exp", "wsk", "wsk-exp"}));
    sc_solve->add_option("--d0", params.d0);
    sc_solve->add_option("--d1", params.d1);
    sc_solve->add_option("--s0", params.s0);
    sc_solve->add_option("--s1", params.s1);
    sc_solve->add_option("--d2", params.d2);
    sc_solve->add_option("--s2", params.s2);
    sc_solve->add_option("--lambda", params.lambda);
    sc_solve->add_option("--k", params.k);
    sc_solve->add_option("--beta", params.beta);
    sc_solve->add_option("--gamma", params.gamma);
    sc_solve->add_option("--n-gamma", params.n_gamma);
    sc_solve->add_option("--p0", params.p0);
    sc_solve->add_option("--t-max", t_max, "simulate on [0, t_max]");
    sc_solve->add_option("--steps", steps, "trajectory grid points");
    sc_solve->add_flag("--verify", verify, "run residual + forward-solver checks");
    sc_solve->add_flag("--as-printed", as_printed,
                       "use the documented alternate constant in the caputo model");

    // --- verify-suite ----------------------------------------------------
    auto* sc_verify = app.add_subcommand("verify-suite", "run the acceptance criteria checks");

    for (CLI::App* cmd : {sc_stair, sc_tr, sc_op, sc_solve, sc_verify}) {
        cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "write output to PATH instead of stdout");
        cmd->add_option("--config", config_path, "JSON config file; flags win on conflict");
    }

    try {
        app.parse(argc, argv);
        CLI::App* active = app.get_subcommands().front();
        apply_config(active, config_path);

        if (active == sc_stair) {
            if (!(stair_lo < stair_hi) || stair_samples < 2)
                throw CLI::ValidationError("--lo/--hi", "need lo < hi and at least 2 samples");
            const fractal::Staircase st = stair_sup.build();
            if (format == "csv") {
                emit(st.tabulate_csv(stair_lo, stair_hi, stair_samples), out_path);
            } else {
                nlohmann::ordered_json j;
                auto &xs = j["x"], &ss = j["S"];
                for (int i = 0; i < stair_samples; ++i) {
                    const double x =
                        stair_lo + (stair_hi - stair_lo) * i / (stair_samples - 1.0);
                    xs.push_back(std::strtod(g12(x).c_str(), nullptr));
                    ss.push_back(std::strtod(g12(st.eval(x)).c_str(), nullptr));
                }
                emit(j.dump(2) + "\n", out_path);
            }
            return kExitOk;
        }

        if (active == sc_tr) {
            const fractal::FunctionDescriptor d = fractal::parse_expr(tr_expr);
            const fractal::Staircase st = tr_sup.build();
            const fractal::RuleResult rule =
                tr_kind == "sumudu" ? fractal::sumudu_rule(d) : fractal::laplace_rule(d);
            std::ostringstream os;
            if (tr_mode == "rule") {
                os << rule.expr.str() << "\n";
            } else {
                if (tr_v.empty())
                    throw CLI::ValidationError("--v", "numeric mode needs evaluation points");
                os << "v,s,rule,numeric,delta\n";
                for (double v : tr_v) {
                    const double s = st.eval(v);
                    const double rv = fractal::expr_eval(rule.expr, s);
                    const double nv = tr_kind == "sumudu"
                                          ? fractal::sumudu_numeric(d, st, v)
                                          : fractal::laplace_numeric(d, st, v);
                    os << g12(v) << "," << g12(s) << "," << g12(rv) << "," << g12(nv) << ","
                       << g12(nv - rv) << "\n";
                }
            }
            emit(os.str(), out_path);
            return kExitOk;
        }

        if (active == sc_op) {
            const fractal::FunctionDescriptor d = fractal::parse_expr(op_expr);
            const fractal::Staircase st = op_sup.build();
            std::ostringstream os;
            if (op_name == "integral") {
                os << "lo,hi,value\n"
                   << g12(op_lo) << "," << g12(op_hi) << ","
                   << g12(fractal::fractal_integral(d, st, op_lo, op_hi)) << "\n";
            } else {
                if (op_x.empty())
                    throw CLI::ValidationError("--x", "this operator needs evaluation points");
                os << "x,value\n";
                for (double x : op_x) {
                    double v = 0.0;
                    if (op_name == "fderiv")
                        v = fractal::local_fderivative(d, st, x);
                    else if (op_name == "rl-integral")
                        v = fractal::rl_integral(d, st, op_order, x);
                    else if (op_name == "rl-derivative")
                        v = fractal::rl_derivative(d, st, op_order, x);
                    else if (op_name == "caputo")
                        v = fractal::caputo_derivative(d, st, op_order, x);
                    else if (op_name == "n-derivative")
                        v = fractal::n_derivative(d, st, op_order, x);
                    else
                        v = fractal::wsk_derivative(d, st, op_order, op_ngamma, x);
                    os << g12(x) << "," << g12(v) << "\n";
                }
            }
            emit(os.str(), out_path);
            return kExitOk;
        }

        if (active == sc_solve) {
            const fractal::ModelTag tag = fractal::model_tag_from_string(model);
            params.expectations =
                tag == fractal::ModelTag::CaputoExp || tag == fractal::ModelTag::WskExp;
            params.validate(tag);
            if (!(t_max > 0.0) || steps < 2)
                throw CLI::ValidationError("--t-max/--steps", "need t_max > 0 and steps >= 2");
            const fractal::Staircase st = solve_sup.build();
            std::vector<double> t_grid(steps + 1);
            for (int i = 0; i <= steps; ++i)
                t_grid[i] = t_max * i / steps;
            const bool caputo_family =
                tag == fractal::ModelTag::CaputoNoExp || tag == fractal::ModelTag::CaputoExp;
            const fractal::PriceTrajectory traj =
                caputo_family ? fractal::solve_caputo(params, st, t_grid)
                              : fractal::solve_wsk(params, st, t_grid);
            std::ostringstream os;
            os << fractal::emit_trajectory(traj, params,
                                           format == "csv" ? fractal::TrajectoryFormat::Csv
                                                           : fractal::TrajectoryFormat::Json);
            int code = kExitOk;
            if (verify) {
                const fractal::TransformExpr res =
                    fractal::transform_residual(params, tag, as_printed);
                os << "residual: " << res.str() << "\n";
                const fractal::PriceTrajectory fwd =
                    fractal::forward_solve(params, st, tag, std::max(steps, 2000), t_max);
                const fractal::PriceTrajectory closed =
                    caputo_family ? fractal::solve_caputo(params, st, fwd.t_grid)
                                  : fractal::solve_wsk(params, st, fwd.t_grid);
                double dev = 0.0;
                for (std::size_t i = 0; i < fwd.t_grid.size(); ++i)
                    dev = std::max(dev, std::abs(fwd.p_values[i] - closed.p_values[i]));
                os << "forward-solver max deviation: " << g12(dev) << "\n";
                if (!res.structurally_zero())
                    code = kExitVerifyFail;
            }
            emit(os.str(), out_path);
            return code;
        }

        // verify-suite
        std::ostringstream os;
        const bool ok = fractal::print_verification_suite(os);
        emit(os.str(), out_path);
        return ok ? kExitOk : kExitVerifyFail;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
