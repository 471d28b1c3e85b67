#include "fractal/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace fractal {

namespace {

RuleResult rule_for_term(const DescriptorTerm& t) {
    RuleResult r;
    if (const auto* k = std::get_if<TermConst>(&t)) {
        r.expr = TransformExpr::constant(k->c);
    } else if (const auto* pw = std::get_if<TermPower>(&t)) {
        r.expr = TransformExpr::monomial(pw->c * std::tgamma(pw->p + 1.0), pw->p);
    } else if (const auto* e = std::get_if<TermExp>(&t)) {
        // c / (1 - a s); the window s < 1/a only binds for growing exponentials
        GenPoly den = GenPoly::constant(1.0) + GenPoly::monomial(-e->a, 1.0);
        r.expr = TransformExpr::ratio(GenPoly::constant(e->c), den);
        if (e->a > 0.0)
            r.s_max = 1.0 / e->a;
    } else if (const auto* s = std::get_if<TermSin>(&t)) {
        GenPoly den = GenPoly::constant(1.0) + GenPoly::monomial(s->a * s->a, 2.0);
        r.expr = TransformExpr::ratio(GenPoly::monomial(s->c * s->a, 1.0), den);
    } else if (const auto* c = std::get_if<TermCos>(&t)) {
        GenPoly den = GenPoly::constant(1.0) + GenPoly::monomial(c->a * c->a, 2.0);
        r.expr = TransformExpr::ratio(GenPoly::constant(c->c), den);
    } else {
        const auto& m = std::get<TermML>(t);
        // E(A u^beta) with A = sign*scale maps to c / (1 - A s^beta)
        const double A = m.spec.signed_scale();
        GenPoly den = GenPoly::constant(1.0) + GenPoly::monomial(-A, m.spec.beta);
        r.expr = TransformExpr::ratio(GenPoly::constant(m.c), den);
        if (A > 0.0)
            r.s_max = std::pow(1.0 / A, 1.0 / m.spec.beta);
    }
    return r;
}

// exponential growth rate of the descriptor for large u
double growth_rate(const FunctionDescriptor& d) {
    double rate = 0.0;
    for (const auto& t : d.terms) {
        if (const auto* e = std::get_if<TermExp>(&t))
            rate = std::max(rate, e->a);
        else if (const auto* m = std::get_if<TermML>(&t))
            if (m->spec.sign > 0 && m->spec.scale > 0.0)
                rate = std::max(rate, std::pow(m->spec.scale, 1.0 / m->spec.beta));
    }
    return rate;
}

double max_power(const FunctionDescriptor& d) {
    double p = 0.0;
    for (const auto& t : d.terms)
        if (const auto* pw = std::get_if<TermPower>(&t))
            p = std::max(p, pw->p);
    return p;
}

} // namespace

RuleResult sumudu_rule(const FunctionDescriptor& d) {
    d.validate();
    RuleResult out;
    out.expr = TransformExpr::zero();
    for (const auto& t : d.terms) {
        RuleResult r = rule_for_term(t);
        out.expr = expr_add(out.expr, r.expr);
        out.s_max = std::min(out.s_max, r.s_max);
    }
    return out;
}

RuleResult laplace_rule(const FunctionDescriptor& d) {
    RuleResult su = sumudu_rule(d);
    RuleResult out;
    // L[f](s) = (1/s) * Sumudu[f](1/s)
    TransformExpr sub{su.expr.num.reciprocal_arg(), su.expr.den.reciprocal_arg()};
    out.expr = expr_simplify(expr_shift(sub, -1.0));
    if (std::isfinite(su.s_max))
        out.s_min = 1.0 / su.s_max;
    return out;
}

namespace {

struct GaussLaguerre {
    std::vector<double> nodes, weights;

    explicit GaussLaguerre(int n) {
        nodes.resize(n);
        weights.resize(n);
        double x = 3.0 / (1.0 + 2.4 * n);
        for (int i = 0; i < n; ++i) {
            if (i == 1)
                x = nodes[0] + 15.0 / (1.0 + 2.5 * n);
            else if (i > 1)
                x = nodes[i - 1] + (nodes[i - 1] - nodes[i - 2]) * (1.0 + 2.55 * i) / (1.9 * i);
            double pn = 0.0, pn1 = 0.0;
            for (int it = 0; it < 100; ++it) {
                pn = 1.0;
                pn1 = 0.0;
                for (int j = 1; j <= n; ++j) {
                    const double p2 = pn1;
                    pn1 = pn;
                    pn = ((2 * j - 1 - x) * pn1 - (j - 1) * p2) / j;
                }
                const double dp = n * (pn - pn1) / x; // L_n'(x)
                const double dx = pn / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15 * (1.0 + x))
                    break;
            }
            nodes[i] = x;
            // w = x / ((n+1) L_{n+1}(x))^2
            const double lnp1 = ((2 * n + 1 - x) * pn - n * pn1) / (n + 1);
            weights[i] = x / ((n + 1.0) * (n + 1.0) * lnp1 * lnp1);
        }
    }
};

// int_0^inf e^{-rate*u} f(u) du. The possibly singular head (fractional
// powers) goes through tanh-sinh; the smooth remainder through composite
// Simpson on the configured panel count.
double kernel_integral(const FunctionDescriptor& d, double rate, const QuadratureConfig& cfg) {
    cfg.validate();
    const double eff = rate - growth_rate(d);
    if (!(eff > 0.0))
        throw std::runtime_error("transform quadrature: integral did not converge");
    // solve eff*u - p*ln(u) = ln(1/tail) + 10 approximately
    const double budget = -std::log(cfg.truncation_tail) + 10.0;
    const double p = max_power(d);
    double upper = budget / eff;
    upper = (budget + p * std::log(std::max(upper, 1.0))) / eff;
    auto integrand = [&](double u) { return std::exp(-rate * u) * eval_u(d, u); };

    double result = 0.0;
    if (cfg.scheme == QuadratureConfig::Scheme::GaussLaguerreInU) {
        static thread_local GaussLaguerre gl(64);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i)
            result += gl.weights[i] * eval_u(d, gl.nodes[i] / rate);
        result /= rate;
    } else {
        const double head = std::min(1.0 / rate, upper);
        result = integrate_tanh_sinh(integrand, 0.0, head, 10);
        if (upper > head) {
            int n = cfg.panels;
            if (n % 2)
                ++n;
            const double h = (upper - head) / n;
            double sum = integrand(head) + integrand(upper);
            for (int i = 1; i < n; ++i)
                sum += integrand(head + i * h) * (i % 2 ? 4.0 : 2.0);
            result += sum * h / 3.0;
        }
        const double edge = std::abs(integrand(upper));
        if (edge > cfg.truncation_tail * (std::abs(result) + 1.0))
            throw std::runtime_error("transform quadrature: integral did not converge");
    }
    return result;
}

} // namespace

double sumudu_numeric_s(const FunctionDescriptor& d, double s, const QuadratureConfig& cfg) {
    if (!(s > 0.0))
        throw std::invalid_argument("sumudu_numeric: transform argument must be positive");
    return kernel_integral(d, 1.0 / s, cfg) / s;
}

double sumudu_numeric(const FunctionDescriptor& d, const Staircase& st, double v,
                      const QuadratureConfig& cfg) {
    const double s = st.eval(v);
    const RuleResult rule = sumudu_rule(d);
    if (s >= rule.s_max)
        throw std::invalid_argument("sumudu_numeric: v outside the validity region");
    return sumudu_numeric_s(d, s, cfg);
}

double laplace_numeric_s(const FunctionDescriptor& d, double s, const QuadratureConfig& cfg) {
    if (!(s > 0.0))
        throw std::invalid_argument("laplace_numeric: transform argument must be positive");
    return kernel_integral(d, s, cfg);
}

double laplace_numeric(const FunctionDescriptor& d, const Staircase& st, double v,
                       const QuadratureConfig& cfg) {
    const double s = st.eval(v);
    const RuleResult rule = laplace_rule(d);
    if (s <= rule.s_min)
        throw std::invalid_argument("laplace_numeric: v outside the validity region");
    return laplace_numeric_s(d, s, cfg);
}

TransformExpr transform_of_derivative(const TransformExpr& sf, double f0) {
    return expr_shift(expr_sub(sf, TransformExpr::constant(f0)), -1.0);
}

TransformExpr transform_of_integral(const TransformExpr& sf) { return expr_shift(sf, 1.0); }

TransformExpr transform_rl_integral(const TransformExpr& sf, double beta) {
    if (!(beta >= 0.0))
        throw std::invalid_argument("transform_rl_integral: beta must be nonnegative");
    return expr_shift(sf, beta);
}

TransformExpr transform_rl_derivative(const TransformExpr& sf, double beta,
                                      const std::vector<double>& init_terms) {
    if (!(beta > 0.0))
        throw std::invalid_argument("transform_rl_derivative: beta must be positive");
    const int n = static_cast<int>(std::ceil(beta));
    if (static_cast<int>(init_terms.size()) != n)
        throw std::invalid_argument("transform_rl_derivative: expected ceil(beta) init terms");
    TransformExpr out = expr_shift(sf, -beta);
    for (int k = 1; k <= n; ++k)
        out = expr_sub(out, TransformExpr::monomial(init_terms[k - 1], -k));
    return out;
}

TransformExpr transform_caputo(const TransformExpr& sf, double beta,
                               const std::vector<double>& derivs_at_0) {
    if (!(beta > 0.0))
        throw std::invalid_argument("transform_caputo: beta must be positive");
    const int n = static_cast<int>(std::ceil(beta));
    if (static_cast<int>(derivs_at_0.size()) != n)
        throw std::invalid_argument("transform_caputo: expected ceil(beta) initial derivatives");
    TransformExpr out = expr_shift(sf, -beta);
    for (int j = 0; j < n; ++j)
        out = expr_sub(out, TransformExpr::monomial(derivs_at_0[j], -(beta - j)));
    return out;
}

TransformExpr transform_wsk(const TransformExpr& sf, double gamma, double f0, double n_gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("transform_wsk: gamma must lie in [0,1)");
    GenPoly den = GenPoly::constant(1.0) + GenPoly::monomial(gamma / (1.0 - gamma), 1.0);
    TransformExpr kernel = TransformExpr::ratio(GenPoly::constant(n_gamma / (1.0 - gamma)), den);
    return expr_mul(kernel, expr_sub(sf, TransformExpr::constant(f0)));
}

double convolution_numeric_u(const FunctionDescriptor& f, const FunctionDescriptor& g, double u) {
    if (!(u >= 0.0))
        throw std::invalid_argument("convolution_numeric: u must be nonnegative");
    if (u == 0.0)
        return 0.0;
    return integrate_tanh_sinh([&](double w) { return eval_u(f, u - w) * eval_u(g, w); }, 0.0,
                               u, 10);
}

double convolution_numeric(const FunctionDescriptor& f, const FunctionDescriptor& g,
                           const Staircase& st, double t) {
    return convolution_numeric_u(f, g, st.eval(t));
}

// ---------------------------------------------------------------------------
// pattern-based inversion

namespace {

constexpr double kTol = 1e-9;

bool near(double a, double b) {
    return std::abs(a - b) <= kTol * (1.0 + std::abs(a) + std::abs(b));
}

[[noreturn]] void unrecognized() {
    throw std::domain_error("inverse_sumudu_rule: unrecognized transform shape");
}

// denominator is the constant 1: a plain generalized polynomial in s
FunctionDescriptor invert_polynomial(const GenPoly& num) {
    std::vector<FunctionDescriptor> parts;
    for (const auto& t : num.terms) {
        if (near(t.exponent, 0.0))
            parts.push_back(FunctionDescriptor::constant(t.coeff));
        else if (t.exponent > -1.0 + kTol)
            parts.push_back(
                FunctionDescriptor::power(t.exponent, t.coeff / std::tgamma(t.exponent + 1.0)));
        else
            unrecognized();
    }
    if (parts.empty())
        parts.push_back(FunctionDescriptor::constant(0.0));
    return FunctionDescriptor::sum(std::move(parts));
}

// denominator 1 + D s^beta
FunctionDescriptor invert_single_factor(const GenPoly& num, double D, double beta) {
    double c0 = 0.0, cb = 0.0;
    for (const auto& t : num.terms) {
        if (near(t.exponent, 0.0))
            c0 = t.coeff;
        else if (near(t.exponent, beta))
            cb = t.coeff;
        else
            unrecognized();
    }
    // c0/(1+Ds^b) + cb s^b/(1+Ds^b) = (cb/D) + (c0 - cb/D) E(-D u^b)
    const double offset = cb / D;
    std::vector<FunctionDescriptor> parts;
    if (offset != 0.0)
        parts.push_back(FunctionDescriptor::constant(offset));
    const double mlc = c0 - offset;
    if (mlc != 0.0 || parts.empty())
        parts.push_back(FunctionDescriptor::mittag_leffler(beta, D, mlc));
    return FunctionDescriptor::sum(std::move(parts));
}

// denominator 1 + c1 s^beta + c2 s^{2 beta}
FunctionDescriptor invert_two_factors(const GenPoly& num, double c1, double c2, double beta) {
    // sin/cos pair: 1 + a^2 s^2
    if (near(beta, 1.0) && near(c1, 0.0) && c2 > 0.0) {
        const double a = std::sqrt(c2);
        double k0 = 0.0, k1 = 0.0;
        for (const auto& t : num.terms) {
            if (near(t.exponent, 0.0))
                k0 = t.coeff;
            else if (near(t.exponent, 1.0))
                k1 = t.coeff;
            else
                unrecognized();
        }
        std::vector<FunctionDescriptor> parts;
        if (k0 != 0.0)
            parts.push_back(FunctionDescriptor::cosine(a, k0));
        if (k1 != 0.0 || parts.empty())
            parts.push_back(FunctionDescriptor::sine(a, k1 / a));
        return FunctionDescriptor::sum(std::move(parts));
    }
    // distinct simple factors: 1 + c1 x + c2 x^2 = (1+r1 x)(1+r2 x) in x = s^beta,
    // r1, r2 the roots of y^2 - c1 y + c2
    const double disc = c1 * c1 - 4.0 * c2;
    if (disc <= kTol * (c1 * c1 + std::abs(c2)))
        unrecognized(); // repeated or complex factors are not table shapes
    const double sq = std::sqrt(disc);
    const double r1 = 0.5 * (c1 + sq);
    const double r2 = 0.5 * (c1 - sq);
    if (r1 == 0.0 || r2 == 0.0)
        unrecognized();
    double n0 = 0.0, n1 = 0.0, n2 = 0.0;
    for (const auto& t : num.terms) {
        if (near(t.exponent, 0.0))
            n0 = t.coeff;
        else if (near(t.exponent, beta))
            n1 = t.coeff;
        else if (near(t.exponent, 2.0 * beta))
            n2 = t.coeff;
        else
            unrecognized();
    }
    std::vector<FunctionDescriptor> parts;
    if (n2 != 0.0) {
        // peel off the constant quotient n2/c2
        const double q = n2 / c2;
        parts.push_back(FunctionDescriptor::constant(q));
        n0 -= q;
        n1 -= q * c1;
    }
    // residues at x = -1/r1 and x = -1/r2
    const double A = (n0 - n1 / r1) / (1.0 - r2 / r1);
    const double B = (n0 - n1 / r2) / (1.0 - r1 / r2);
    if (A != 0.0)
        parts.push_back(invert_single_factor(GenPoly::constant(A), r1, beta));
    if (B != 0.0)
        parts.push_back(invert_single_factor(GenPoly::constant(B), r2, beta));
    if (parts.empty())
        parts.push_back(FunctionDescriptor::constant(0.0));
    return FunctionDescriptor::sum(std::move(parts));
}

FunctionDescriptor invert(const TransformExpr& e) {
    TransformExpr c = expr_simplify(e);
    const auto& den = c.den.terms;
    if (den.size() == 1 && near(den.front().exponent, 0.0))
        return invert_polynomial(c.num);
    if (den.size() == 1) {
        GenPoly shifted = c.num.shifted(-den.front().exponent);
        return invert_polynomial(shifted.normalize());
    }
    if (den.size() == 2 && near(den.front().exponent, 0.0)) {
        const double beta = den.back().exponent;
        if (beta <= 0.0)
            unrecognized();
        // 1 + a^2 s^2 with an odd-power numerator is the sin shape, which the
        // single-factor pattern cannot absorb
        if (near(beta, 2.0) && den.back().coeff > 0.0) {
            for (const auto& t : c.num.terms)
                if (!near(t.exponent, 0.0) && !near(t.exponent, beta))
                    return invert_two_factors(c.num, 0.0, den.back().coeff, 1.0);
        }
        return invert_single_factor(c.num, den.back().coeff, beta);
    }
    if (den.size() == 3 && near(den.front().exponent, 0.0)) {
        const double beta = den[1].exponent;
        if (beta <= 0.0 || !near(den[2].exponent, 2.0 * beta))
            unrecognized();
        return invert_two_factors(c.num, den[1].coeff, den[2].coeff, beta);
    }
    unrecognized();
}

} // namespace

FunctionDescriptor inverse_sumudu_rule(const TransformExpr& e) {
    FunctionDescriptor d = invert(e);
    d.validate();
    // round-trip safety: the rule transform of the result must reproduce e
    if (!expr_equal(sumudu_rule(d).expr, expr_simplify(e), 1e-8))
        throw std::domain_error("inverse_sumudu_rule: unrecognized transform shape");
    return d;
}

} // namespace fractal
