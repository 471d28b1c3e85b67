#pragma once

#include <string>
#include <vector>

namespace fractal {

// Generalized polynomial in the transform symbol s = S_F^alpha(v): a sum of
// c * s^mu terms with real exponents. Exponents within 1e-12 are merged.
struct GenPoly {
    struct Term {
        double coeff;
        double exponent;
    };
    std::vector<Term> terms; // sorted by exponent after normalize()

    static GenPoly zero() { return {}; }
    static GenPoly constant(double c);
    static GenPoly monomial(double coeff, double exponent);

    GenPoly& normalize(); // sort, merge, strip negligible coefficients
    bool is_zero() const { return terms.empty(); }
    double eval(double s) const;
    GenPoly shifted(double dexp) const; // multiply by s^dexp
    GenPoly reciprocal_arg() const;     // substitute s -> 1/s
};

GenPoly operator+(const GenPoly& a, const GenPoly& b);
GenPoly operator-(const GenPoly& a, const GenPoly& b);
GenPoly operator*(const GenPoly& a, const GenPoly& b);
GenPoly operator*(double c, const GenPoly& a);

// Ratio of two generalized polynomials. Canonical form after simplify():
// common monomial factor cancelled, denominator's lowest-exponent
// coefficient normalized to 1.
struct TransformExpr {
    GenPoly num;
    GenPoly den = GenPoly::constant(1.0);

    static TransformExpr zero();
    static TransformExpr constant(double c);
    static TransformExpr monomial(double coeff, double exponent);
    static TransformExpr ratio(GenPoly n, GenPoly d);

    bool structurally_zero() const;
    std::string str() const;
};

TransformExpr expr_add(const TransformExpr& a, const TransformExpr& b);
TransformExpr expr_sub(const TransformExpr& a, const TransformExpr& b);
TransformExpr expr_mul(const TransformExpr& a, const TransformExpr& b);
TransformExpr expr_scale(double c, const TransformExpr& a);
TransformExpr expr_shift(const TransformExpr& a, double dexp); // multiply by s^dexp
TransformExpr expr_simplify(const TransformExpr& e);
double expr_eval(const TransformExpr& e, double s);

// coefficient-level equality of the simplified difference
bool expr_equal(const TransformExpr& a, const TransformExpr& b, double tol = 1e-10);

} // namespace fractal
