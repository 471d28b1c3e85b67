#pragma once

#include "fractal/special.hpp"
#include "fractal/support.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fractal {

// Closed algebra of transformable functions. Every primitive is a function
// of the staircase value u = S(t):
//   Const(c)         c
//   Power(p, c)      c u^p, p > -1
//   Exp(a, c)        c e^{a u}
//   Sin(a, c)        c sin(a u)
//   Cos(a, c)        c cos(a u)
//   ML(spec, c)      c E(sign*scale * u^beta)
// Sums are kept flat.
struct FunctionDescriptor;

struct TermConst { double c = 1.0; };
struct TermPower { double p = 1.0; double c = 1.0; };
struct TermExp   { double a = 1.0; double c = 1.0; };
struct TermSin   { double a = 1.0; double c = 1.0; };
struct TermCos   { double a = 1.0; double c = 1.0; };
struct TermML    { MLSpec spec; double c = 1.0; };

using DescriptorTerm = std::variant<TermConst, TermPower, TermExp, TermSin, TermCos, TermML>;

struct FunctionDescriptor {
    std::vector<DescriptorTerm> terms; // nonempty; a single term is the common case

    static FunctionDescriptor constant(double c);
    static FunctionDescriptor power(double p, double c = 1.0);
    static FunctionDescriptor exponential(double a, double c = 1.0);
    static FunctionDescriptor sine(double a, double c = 1.0);
    static FunctionDescriptor cosine(double a, double c = 1.0);
    static FunctionDescriptor mittag_leffler(double beta, double a, double c = 1.0);
    static FunctionDescriptor sum(std::vector<FunctionDescriptor> parts);

    void validate() const;
    FunctionDescriptor scaled(double factor) const;
};

// Pointwise value with u = S(t).
double eval_descriptor(const FunctionDescriptor& d, const Staircase& st, double t);

// Value, first, and n-th derivative in the staircase variable u.
double eval_u(const FunctionDescriptor& d, double u);
double eval_u_derivative(const FunctionDescriptor& d, double u, int order = 1);

// Mini-language:
//   expr := term (('+'|'-') term)*
//   term := number? '*'? atom
//   atom := 'const' | 'pow(' p ')' | 'exp(' a ')' | 'sin(' a ')' | 'cos(' a ')'
//         | 'ml(' beta ',' a ')'
// Whitespace-insensitive. Errors carry the byte offset.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t off)
        : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

FunctionDescriptor parse_expr(const std::string& text);
std::string print_descriptor(const FunctionDescriptor& d);

} // namespace fractal
