#include "fractal/descriptor.hpp"
#include "fractal/transform_expr.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace fractal;

TEST_CASE("parse_expr covers the whole mini-language") {
    auto d = parse_expr("2*exp(-0.5) + pow(1)");
    REQUIRE(d.terms.size() == 2);
    const auto& e = std::get<TermExp>(d.terms[0]);
    CHECK(e.a == doctest::Approx(-0.5));
    CHECK(e.c == doctest::Approx(2.0));
    const auto& pw = std::get<TermPower>(d.terms[1]);
    CHECK(pw.p == doctest::Approx(1.0));
    CHECK(pw.c == doctest::Approx(1.0));

    auto m = parse_expr("ml(0.5, 1)");
    REQUIRE(m.terms.size() == 1);
    const auto& ml = std::get<TermML>(m.terms[0]);
    CHECK(ml.spec.beta == doctest::Approx(0.5));
    CHECK(ml.spec.scale == doctest::Approx(1.0));
    CHECK(ml.spec.sign == -1); // ml(beta, a) stands for E(-a u^beta)

    auto grow = parse_expr("ml(1, -2)");
    CHECK(std::get<TermML>(grow.terms[0]).spec.sign == +1);

    auto k = parse_expr("3.5*const - sin(2)");
    REQUIRE(k.terms.size() == 2);
    CHECK(std::get<TermConst>(k.terms[0]).c == doctest::Approx(3.5));
    CHECK(std::get<TermSin>(k.terms[1]).c == doctest::Approx(-1.0));

    // bare number acts as a constant, whitespace is free
    CHECK(eval_u(parse_expr("  4  "), 0.3) == doctest::Approx(4.0));
    CHECK(eval_u(parse_expr("cos(1)+2"), 0.0) == doctest::Approx(3.0));
}

TEST_CASE("parse_expr rejects malformed input with a byte offset") {
    CHECK_THROWS_AS(parse_expr("pow(-2)"), ParseError);
    CHECK_THROWS_AS(parse_expr("ml(0, 1)"), ParseError);
    CHECK_THROWS_AS(parse_expr("frob(1)"), ParseError);
    CHECK_THROWS_AS(parse_expr("exp(1"), ParseError);
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    try {
        parse_expr("exp(1) ? pow(2)");
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        CHECK(err.offset == 7);
    }
}

TEST_CASE("print_descriptor round trips through the parser") {
    const char* samples[] = {
        "2*exp(-0.5) + pow(1)", "ml(0.5,1) - 0.25*cos(3)", "pow(2.5) + const",
        "sin(1.5) + ml(1,-0.7)",
    };
    for (const char* text : samples) {
        auto d = parse_expr(text);
        auto d2 = parse_expr(print_descriptor(d));
        for (double u : {0.0, 0.4, 1.1, 2.7})
            CHECK(eval_u(d2, u) == doctest::Approx(eval_u(d, u)).epsilon(1e-13));
    }
}

TEST_CASE("descriptor evaluation and derivatives in u") {
    auto d = parse_expr("2*exp(0.5) + pow(2) - sin(3)");
    auto f = [](double u) { return 2.0 * std::exp(0.5 * u) + u * u - std::sin(3.0 * u); };
    auto f2 = [](double u) { return 0.5 * std::exp(0.5 * u) + 2.0 + 9.0 * std::sin(3.0 * u); };
    for (double u : {0.0, 0.3, 1.0, 2.0}) {
        CHECK(eval_u(d, u) == doctest::Approx(f(u)).epsilon(1e-13));
        CHECK(eval_u_derivative(d, u, 2) == doctest::Approx(f2(u)).epsilon(1e-13));
    }

    auto st = Staircase::build(FractalSupport::cantor());
    for (double t : {0.25, 0.5, 0.9})
        CHECK(eval_descriptor(d, st, t) == doctest::Approx(f(st.eval(t))).epsilon(1e-13));

    // scaled() multiplies every term
    auto half = d.scaled(0.5);
    CHECK(eval_u(half, 0.7) == doctest::Approx(0.5 * eval_u(d, 0.7)).epsilon(1e-13));
}

TEST_CASE("descriptor validation") {
    FunctionDescriptor empty;
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
    CHECK_THROWS_AS(FunctionDescriptor::power(-2.0), std::invalid_argument);
    CHECK_NOTHROW(FunctionDescriptor::power(-0.5).validate());
}

namespace {

TransformExpr random_expr(std::mt19937& rng) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> expo(0, 3);
    GenPoly num = GenPoly::monomial(coeff(rng), 0.5 * expo(rng));
    num = num + GenPoly::monomial(coeff(rng), 0.5 * expo(rng));
    GenPoly den = GenPoly::constant(1.0);
    den = den + GenPoly::monomial(0.5 * coeff(rng), 1.0 + 0.5 * expo(rng));
    return TransformExpr::ratio(num, den);
}

} // namespace

TEST_CASE("transform expression ring axioms at sample points") {
    std::mt19937 rng(12345);
    const double pts[] = {0.17, 0.42, 0.9, 1.6, 3.3};
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_expr(rng);
        auto b = random_expr(rng);
        auto c = random_expr(rng);
        for (double s : pts) {
            const double av = expr_eval(a, s), bv = expr_eval(b, s), cv = expr_eval(c, s);
            CHECK(expr_eval(expr_add(a, b), s) == doctest::Approx(av + bv).epsilon(1e-10));
            CHECK(expr_eval(expr_sub(a, b), s) == doctest::Approx(av - bv).epsilon(1e-10));
            CHECK(expr_eval(expr_mul(a, b), s) == doctest::Approx(av * bv).epsilon(1e-10));
            CHECK(expr_eval(expr_mul(a, expr_add(b, c)), s) ==
                  doctest::Approx(av * (bv + cv)).epsilon(1e-9));
            CHECK(expr_eval(expr_scale(-1.5, a), s) == doctest::Approx(-1.5 * av).epsilon(1e-10));
            CHECK(expr_eval(expr_shift(a, 0.5), s) ==
                  doctest::Approx(std::pow(s, 0.5) * av).epsilon(1e-10));
        }
        CHECK(expr_sub(a, a).structurally_zero());
        CHECK(expr_equal(expr_add(a, b), expr_add(b, a)));
        CHECK(expr_equal(expr_mul(a, b), expr_mul(b, a)));
    }
}

TEST_CASE("transform expression canonical form") {
    // (s^2 + s)/s simplifies to s + 1, denominator normalized to 1
    auto e = TransformExpr::ratio(GenPoly::monomial(1.0, 2.0) + GenPoly::monomial(1.0, 1.0),
                                  GenPoly::monomial(1.0, 1.0));
    auto simple = expr_simplify(e);
    CHECK(expr_equal(simple, TransformExpr::ratio(GenPoly::constant(1.0) + GenPoly::monomial(1.0, 1.0),
                                                  GenPoly::constant(1.0))));

    // leading denominator coefficient is scaled out
    auto half = expr_simplify(
        TransformExpr::ratio(GenPoly::constant(1.0), GenPoly::constant(2.0) + GenPoly::monomial(2.0, 1.0)));
    REQUIRE(!half.den.terms.empty());
    CHECK(half.den.terms.front().coeff == doctest::Approx(1.0));
    CHECK(expr_eval(half, 1.0) == doctest::Approx(0.25));

    CHECK(TransformExpr::zero().structurally_zero());
    CHECK(!TransformExpr::constant(1e-6).structurally_zero());
    CHECK(TransformExpr::constant(0.0).structurally_zero());
    CHECK(TransformExpr::constant(2.0).str() == "2");
}

TEST_CASE("expression for 1/(1-as) matches its geometric series") {
    const double a = 0.3;
    auto geom = TransformExpr::ratio(GenPoly::constant(1.0),
                                     GenPoly::constant(1.0) + GenPoly::monomial(-a, 1.0));
    for (double s : {0.1, 0.5, 1.5}) {
        double sum = 0.0, term = 1.0;
        for (int k = 0; k < 200; ++k) {
            sum += term;
            term *= a * s;
        }
        CHECK(expr_eval(geom, s) == doctest::Approx(sum).epsilon(1e-12));
    }
    CHECK(geom.str() == "1/(1 - 0.3*s)");
}

TEST_CASE("resolvent complement identity at coefficient level") {
    // a s^b/(1 + a s^b) + 1/(1 + a s^b) = 1
    const double a = 2.0, b = 0.5;
    GenPoly den = GenPoly::constant(1.0) + GenPoly::monomial(a, b);
    auto first = TransformExpr::ratio(GenPoly::monomial(a, b), den);
    auto second = TransformExpr::ratio(GenPoly::constant(1.0), den);
    auto sum = expr_add(first, second);
    CHECK(expr_equal(sum, TransformExpr::constant(1.0), 1e-14));
    CHECK(expr_sub(sum, TransformExpr::constant(1.0)).structurally_zero());
}

TEST_CASE("expr_eval domain errors") {
    auto e = TransformExpr::ratio(GenPoly::constant(1.0),
                                  GenPoly::constant(1.0) + GenPoly::monomial(-1.0, 1.0));
    CHECK_THROWS_AS(expr_eval(e, 1.0), std::domain_error); // denominator vanishes
    CHECK_THROWS_AS(expr_eval(e, 0.0), std::invalid_argument); // s must be positive
    CHECK_THROWS_AS(expr_eval(e, -1.0), std::invalid_argument);
    CHECK(expr_eval(e, 0.5) == doctest::Approx(2.0));
}
