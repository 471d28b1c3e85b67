#include "fractal/transform_expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fractal {

namespace {
constexpr double kExpTol = 1e-12;   // exponents closer than this are the same power
constexpr double kCoeffTol = 1e-12; // relative cutoff for cancelled coefficients
} // namespace

GenPoly GenPoly::constant(double c) { return monomial(c, 0.0); }

GenPoly GenPoly::monomial(double coeff, double exponent) {
    GenPoly p;
    if (coeff != 0.0)
        p.terms.push_back({coeff, exponent});
    return p;
}

GenPoly& GenPoly::normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    std::vector<Term> merged;
    for (const Term& t : terms) {
        if (!merged.empty() && std::abs(merged.back().exponent - t.exponent) <= kExpTol)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(t);
    }
    double maxabs = 0.0;
    for (const Term& t : merged)
        maxabs = std::max(maxabs, std::abs(t.coeff));
    terms.clear();
    for (const Term& t : merged)
        if (std::abs(t.coeff) > kCoeffTol * maxabs && t.coeff != 0.0)
            terms.push_back(t);
    return *this;
}

double GenPoly::eval(double s) const {
    double sum = 0.0;
    for (const Term& t : terms)
        sum += t.coeff * std::pow(s, t.exponent);
    return sum;
}

GenPoly GenPoly::shifted(double dexp) const {
    GenPoly out = *this;
    for (Term& t : out.terms)
        t.exponent += dexp;
    return out;
}

GenPoly GenPoly::reciprocal_arg() const {
    GenPoly out = *this;
    for (Term& t : out.terms)
        t.exponent = -t.exponent;
    return out.normalize(), out;
}

GenPoly operator+(const GenPoly& a, const GenPoly& b) {
    GenPoly out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out.normalize(), out;
}

GenPoly operator-(const GenPoly& a, const GenPoly& b) { return a + (-1.0 * b); }

GenPoly operator*(const GenPoly& a, const GenPoly& b) {
    GenPoly out;
    out.terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms)
            out.terms.push_back({ta.coeff * tb.coeff, ta.exponent + tb.exponent});
    return out.normalize(), out;
}

GenPoly operator*(double c, const GenPoly& a) {
    GenPoly out = a;
    for (auto& t : out.terms)
        t.coeff *= c;
    return out.normalize(), out;
}

TransformExpr TransformExpr::zero() { return {GenPoly::zero(), GenPoly::constant(1.0)}; }

TransformExpr TransformExpr::constant(double c) {
    return {GenPoly::constant(c), GenPoly::constant(1.0)};
}

TransformExpr TransformExpr::monomial(double coeff, double exponent) {
    return {GenPoly::monomial(coeff, exponent), GenPoly::constant(1.0)};
}

TransformExpr TransformExpr::ratio(GenPoly n, GenPoly d) {
    if (d.is_zero())
        throw std::invalid_argument("TransformExpr: structurally zero denominator");
    return expr_simplify({std::move(n), std::move(d)});
}

bool TransformExpr::structurally_zero() const {
    if (num.is_zero())
        return true;
    // canonical form has a unit leading denominator coefficient, so numerator
    // coefficients below 1e-12 of the denominator scale are cancellation dust
    double nmax = 0.0, dmax = 0.0;
    for (const auto& t : num.terms)
        nmax = std::max(nmax, std::abs(t.coeff));
    for (const auto& t : den.terms)
        dmax = std::max(dmax, std::abs(t.coeff));
    return nmax <= 1e-12 * std::max(dmax, 1.0);
}

TransformExpr expr_simplify(const TransformExpr& e) {
    TransformExpr out = e;
    out.num.normalize();
    out.den.normalize();
    if (out.den.is_zero())
        throw std::invalid_argument("TransformExpr: structurally zero denominator");
    if (out.num.is_zero())
        return TransformExpr::zero();
    // cancel the common monomial factor s^mu
    const double mu =
        std::min(out.num.terms.front().exponent, out.den.terms.front().exponent);
    if (mu != 0.0) {
        out.num = out.num.shifted(-mu);
        out.den = out.den.shifted(-mu);
    }
    // unit leading denominator coefficient
    const double lead = out.den.terms.front().coeff;
    out.num = (1.0 / lead) * out.num;
    out.den = (1.0 / lead) * out.den;
    return out;
}

TransformExpr expr_add(const TransformExpr& a, const TransformExpr& b) {
    return expr_simplify({a.num * b.den + b.num * a.den, a.den * b.den});
}

TransformExpr expr_sub(const TransformExpr& a, const TransformExpr& b) {
    return expr_add(a, expr_scale(-1.0, b));
}

TransformExpr expr_mul(const TransformExpr& a, const TransformExpr& b) {
    return expr_simplify({a.num * b.num, a.den * b.den});
}

TransformExpr expr_scale(double c, const TransformExpr& a) {
    return expr_simplify({c * a.num, a.den});
}

TransformExpr expr_shift(const TransformExpr& a, double dexp) {
    return expr_simplify({a.num.shifted(dexp), a.den});
}

double expr_eval(const TransformExpr& e, double s) {
    if (!(s > 0.0))
        throw std::invalid_argument("expr_eval: s must be positive");
    const double d = e.den.eval(s);
    if (d == 0.0)
        throw std::domain_error("expr_eval: denominator vanishes at this s");
    return e.num.eval(s) / d;
}

bool expr_equal(const TransformExpr& a, const TransformExpr& b, double tol) {
    GenPoly diff = a.num * b.den - b.num * a.den;
    double scale = 0.0;
    for (const auto& t : (a.num * b.den).terms)
        scale = std::max(scale, std::abs(t.coeff));
    for (const auto& t : (b.num * a.den).terms)
        scale = std::max(scale, std::abs(t.coeff));
    if (scale == 0.0)
        return diff.is_zero();
    for (const auto& t : diff.terms)
        if (std::abs(t.coeff) > tol * scale)
            return false;
    return true;
}

namespace {

std::string poly_str(const GenPoly& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    char buf[64];
    bool first = true;
    for (const auto& t : p.terms) {
        const double c = t.coeff;
        if (first) {
            out += c < 0.0 ? "-" : "";
        } else {
            out += c < 0.0 ? " - " : " + ";
        }
        first = false;
        const double ac = std::abs(c);
        const bool unit = std::abs(ac - 1.0) < 1e-15;
        if (t.exponent == 0.0) {
            std::snprintf(buf, sizeof buf, "%.12g", ac);
            out += buf;
        } else {
            if (!unit) {
                std::snprintf(buf, sizeof buf, "%.12g*", ac);
                out += buf;
            }
            if (t.exponent == 1.0) {
                out += "s";
            } else {
                std::snprintf(buf, sizeof buf, "s^%.12g", t.exponent);
                out += buf;
            }
        }
    }
    return out;
}

} // namespace

std::string TransformExpr::str() const {
    const bool unit_den = den.terms.size() == 1 && den.terms.front().exponent == 0.0 &&
                          std::abs(den.terms.front().coeff - 1.0) < 1e-15;
    if (unit_den)
        return poly_str(num);
    const bool simple_num = num.terms.size() <= 1;
    std::string n = poly_str(num);
    if (!simple_num)
        n = "(" + n + ")";
    return n + "/(" + poly_str(den) + ")";
}

} // namespace fractal
