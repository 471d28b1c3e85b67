#include "fractal/support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace fractal;

namespace {
const double kAlpha3 = std::log(2.0) / std::log(3.0);
}

TEST_CASE("support construction and validation") {
    auto line = FractalSupport::identity_line();
    CHECK(line.kind == FractalSupport::Kind::IdentityLine);
    CHECK(line.alpha == 1.0);

    auto cantor = FractalSupport::cantor();
    CHECK(cantor.kind == FractalSupport::Kind::CantorLike);
    CHECK(cantor.alpha == doctest::Approx(kAlpha3).epsilon(1e-14));
    CHECK(cantor.child_ratio() == 1.0 / 3.0);

    auto half = FractalSupport::cantor(0.5);
    CHECK(half.alpha == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(half.child_ratio() == doctest::Approx(0.25));

    CHECK_THROWS_AS(FractalSupport::cantor(1.2), std::invalid_argument);
    CHECK_THROWS_AS(FractalSupport::cantor(0.0), std::invalid_argument);

    auto bad = FractalSupport::identity_line();
    bad.alpha = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("partition basics") {
    auto p = Partition::uniform(0.0, 1.0, 4);
    REQUIRE(p.points.size() == 5);
    CHECK(p.mesh() == doctest::Approx(0.25));
    CHECK_NOTHROW(p.validate());

    CHECK_THROWS_AS(Partition::uniform(1.0, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Partition::uniform(0.0, 1.0, 0), std::invalid_argument);

    Partition bad{{0.0, 0.5, 0.5, 1.0}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("flag_value detects intersection with the support") {
    auto line = FractalSupport::identity_line();
    auto cantor = FractalSupport::cantor();

    CHECK(flag_value(line, 0.4, 0.5) == 1);
    CHECK(flag_value(cantor, 0.4, 0.5) == 0); // interior of the first gap
    CHECK(flag_value(cantor, 0.0, 1.0 / 3.0) == 1);
    // closed interval: endpoint contact with the set counts
    CHECK(flag_value(cantor, 1.0 / 3.0, 2.0 / 3.0) == 1);
    CHECK(flag_value(cantor, 0.34, 0.65) == 0);
    CHECK(flag_value(cantor, 2.0, 3.0) == 0); // outside the base interval
    CHECK_THROWS_AS(flag_value(cantor, 0.6, 0.4), std::invalid_argument);
}

TEST_CASE("sigma_alpha on flagged partitions") {
    auto line = FractalSupport::identity_line();
    // alpha = 1, every flag 1: the sum telescopes to the interval length
    CHECK(sigma_alpha(line, Partition::uniform(0.0, 1.0, 4)) == doctest::Approx(1.0));
    CHECK(sigma_alpha(line, Partition::uniform(0.0, 2.0, 7)) == doctest::Approx(2.0));

    auto cantor = FractalSupport::cantor();
    Partition triadic{{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}};
    // all three closed cells touch the set: 3 * (1/3)^alpha / Gamma(alpha+1)
    const double expect = 3.0 * std::pow(1.0 / 3.0, kAlpha3) / std::tgamma(kAlpha3 + 1.0);
    CHECK(sigma_alpha(cantor, triadic) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("coarse_mass") {
    auto line = FractalSupport::identity_line();
    CHECK(coarse_mass(line, 0.0, 1.0, 0.1) == doctest::Approx(1.0));
    CHECK(coarse_mass(line, 0.0, 1.0, 1e-4) == doctest::Approx(1.0));
    CHECK(coarse_mass(line, 0.25, 0.75, 1e-3) == doctest::Approx(0.5));
    CHECK(coarse_mass(line, 0.5, 0.5, 0.1) == 0.0);
    CHECK_THROWS_AS(coarse_mass(line, 0.0, 1.0, 0.0), std::invalid_argument);

    auto cantor = FractalSupport::cantor();
    // refined partitions can only shrink the infimum taken over partitions
    Partition triadic{{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}};
    CHECK(coarse_mass(cantor, 0.0, 1.0, 1.0 / 3.0) <= sigma_alpha(cantor, triadic) + 1e-12);
    // nondecreasing as delta shrinks (flagged gap slivers only disappear)
    double prev = coarse_mass(cantor, 0.0, 1.0, 1.0);
    for (double delta : {1.0 / 3, 1.0 / 9, 1.0 / 27, 1.0 / 81, 1.0 / 243}) {
        double cur = coarse_mass(cantor, 0.0, 1.0, delta);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("mass_function limits") {
    auto line = FractalSupport::identity_line();
    auto r = mass_function(line, 0.25, 2.0);
    CHECK(r.value == doctest::Approx(1.75));
    CHECK(r.error_estimate == 0.0);

    auto cantor = FractalSupport::cantor();
    auto whole = mass_function(cantor, 0.0, 1.0);
    auto left = mass_function(cantor, 0.0, 1.0 / 3.0);
    CHECK(whole.value > 0.0);
    // self-similarity: the left third carries exactly half the mass
    CHECK(left.value == doctest::Approx(0.5 * whole.value).epsilon(1e-4));
    CHECK(mass_function(cantor, 0.5, 0.5).value == 0.0);
    CHECK_THROWS_AS(mass_function(cantor, 0.7, 0.2), std::invalid_argument);
}

TEST_CASE("staircase on the identity line") {
    auto st = Staircase::build(FractalSupport::identity_line());
    CHECK(st.eval(2.5) == 2.5);
    CHECK(st.eval(-1.25) == -1.25);
    CHECK(st.inverse(0.7) == 0.7);
    CHECK(st.alpha() == 1.0);

    auto shifted = Staircase::build(FractalSupport::identity_line(), 1.0);
    CHECK(shifted.eval(1.0) == 0.0);
    CHECK(shifted.eval(3.0) == 2.0);
    CHECK(shifted.inverse(2.0) == 3.0);
}

TEST_CASE("staircase on the middle-third set") {
    auto st = Staircase::build(FractalSupport::cantor());
    const double s1 = st.eval(1.0);
    CHECK(s1 > 0.0);
    CHECK(st.eval(0.0) == 0.0);

    // S(1/3) = S(1)/2 and S(1/4) = S(1)/3 (1/4 = 0.020202..._3)
    CHECK(st.eval(1.0 / 3.0) == doctest::Approx(0.5 * s1).epsilon(1e-14));
    CHECK(st.eval(0.25) == doctest::Approx(s1 / 3.0).epsilon(1e-12));

    // constancy across a gap
    CHECK(st.eval(0.4) == st.eval(0.6));

    // self-similarity and reflection symmetry on a triadic grid; the
    // staircase is Hoelder-alpha, so one ulp of argument rounding can move
    // the value by ~1e-11 near points of the set
    for (int k = 0; k <= 81; ++k) {
        const double x = k / 81.0;
        CHECK(std::abs(st.eval(x / 3.0) - 0.5 * st.eval(x)) < 1e-9);
        CHECK(std::abs(st.eval(1.0 - x) - (s1 - st.eval(x))) < 1e-9);
    }

    // monotone, and continued self-similarly past [0,1]
    double prev = st.eval(0.0);
    for (int k = 1; k <= 60; ++k) {
        const double cur = st.eval(3.0 * k / 60.0);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK(st.eval(3.0) == doctest::Approx(2.0 * s1).epsilon(1e-13));

    // calibration matches the mass of [0,1]
    CHECK(s1 == doctest::Approx(mass_function(st.support(), 0.0, 1.0).value).epsilon(1e-3));
}

TEST_CASE("staircase inverse is the left plateau endpoint") {
    auto st = Staircase::build(FractalSupport::cantor());
    const double s1 = st.eval(1.0);
    CHECK(st.inverse(0.5 * s1) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(st.inverse(0.0) == doctest::Approx(0.0));
    for (double x : {0.1, 0.25, 1.0 / 3.0, 0.7, 0.9, 1.0}) {
        const double u = st.eval(x);
        const double xi = st.inverse(u);
        CHECK(xi <= x + 1e-12);
        CHECK(st.eval(xi) == doctest::Approx(u).epsilon(1e-9));
    }
}

TEST_CASE("generalized cantor staircase") {
    auto st = Staircase::build(FractalSupport::cantor(0.5));
    const double l = 0.25;
    const double s1 = st.eval(1.0);
    for (double x : {0.1, 0.3, 0.5, 0.8, 1.0})
        CHECK(st.eval(l * x) == doctest::Approx(0.5 * st.eval(x)).epsilon(1e-9));
    CHECK(st.eval(0.3) == st.eval(0.7)); // middle-half gap
    CHECK(s1 > 0.0);
}

TEST_CASE("tabulate_csv") {
    auto st = Staircase::build(FractalSupport::identity_line());
    const std::string csv = st.tabulate_csv(0.0, 1.0, 3);
    std::istringstream in(csv);
    std::string lines[8];
    int n = 0;
    for (std::string line; std::getline(in, line) && n < 8;)
        lines[n++] = line;
    REQUIRE(n == 4);
    CHECK(lines[0] == "x,S");
    CHECK(lines[1] == "0,0");
    CHECK(lines[2] == "0.5,0.5");
    CHECK(lines[3] == "1,1");
    CHECK_THROWS_AS(st.tabulate_csv(1.0, 0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(st.tabulate_csv(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("raw devil's staircase digit map") {
    CHECK(devils_staircase(0.0) == 0.0);
    CHECK(devils_staircase(1.0) == 1.0);
    CHECK(devils_staircase(1.0 / 3.0) == 0.5);
    CHECK(devils_staircase(2.0 / 3.0) == 0.5);
    CHECK(devils_staircase(1.0 / 9.0) == 0.25);
    CHECK(devils_staircase(0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(devils_staircase_inverse(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(devils_staircase_inverse(0.25) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}
