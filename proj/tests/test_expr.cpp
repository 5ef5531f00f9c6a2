#include <doctest.h>

#include <cmath>
#include <random>

#include "cdstab/expr.hpp"

using cdstab::EvalError;
using cdstab::ParseError;
using cdstab::expr::Expression;

TEST_CASE("linear, square and precedence") {
    CHECK(Expression::parse("z+1")(0.5) == doctest::Approx(1.5));
    CHECK(Expression::parse("(z+1)^2")(1.0) == doctest::Approx(4.0));
    CHECK(Expression::parse("2*z^2")(3.0) == doctest::Approx(18.0));  // ^ above *
    CHECK(Expression::parse("(z+1)^2")(0.25) == doctest::Approx(1.5625));
}

TEST_CASE("power is right-associative, unary minus binds below it") {
    CHECK(Expression::parse("2^3^2")(0.0) == doctest::Approx(512.0));
    CHECK(Expression::parse("-2^2")(0.0) == doctest::Approx(-4.0));
    CHECK(Expression::parse("2^-1")(0.0) == doctest::Approx(0.5));
    CHECK(Expression::parse("-z^2")(3.0) == doctest::Approx(-9.0));
}

TEST_CASE("function set") {
    CHECK(Expression::parse("exp(z)")(0.0) == doctest::Approx(1.0));
    CHECK(Expression::parse("sin(z)")(0.0) == doctest::Approx(0.0));
    CHECK(Expression::parse("cos(z)")(0.0) == doctest::Approx(1.0));
    CHECK(Expression::parse("log(exp(z))")(2.0) == doctest::Approx(2.0));
    CHECK(Expression::parse("sqrt(z^2)")(-3.0) == doctest::Approx(3.0));
    CHECK(Expression::parse("abs(z)")(-2.5) == doctest::Approx(2.5));
}

TEST_CASE("syntax errors carry byte offsets") {
    CHECK_THROWS_AS(Expression::parse(""), ParseError);
    try {
        Expression::parse("z+");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
    }
    try {
        Expression::parse("(z+1");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset >= 4);
    }
    CHECK_THROWS_AS(Expression::parse("foo(z)"), ParseError);
    CHECK_THROWS_AS(Expression::parse("z y"), ParseError);
    CHECK_THROWS_AS(Expression::parse("x+1", "z"), ParseError);  // wrong variable name
}

TEST_CASE("domain errors are reported, not propagated as NaN") {
    CHECK_THROWS_AS(Expression::parse("1/(z-1)")(1.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("log(z)")(-1.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("sqrt(z)")(-1.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("z^0.5")(-4.0), EvalError);
    CHECK_THROWS_AS(Expression::parse("exp(z)")(1e10), EvalError);  // overflow to inf
}

TEST_CASE("alternate variable name") {
    Expression h = Expression::parse("exp(-v)", "v");
    CHECK(h(0.0) == doctest::Approx(1.0));
    CHECK(h(1.0) == doctest::Approx(std::exp(-1.0)));
}

namespace {

// Random expression source for the round-trip property.
std::string random_source(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    switch (pick(rng)) {
        case 0: {
            std::uniform_real_distribution<double> num(0.1, 4.0);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", num(rng));
            return buf;
        }
        case 1: return "z";
        case 2: return "(" + random_source(rng, depth - 1) + "+" + random_source(rng, depth - 1) + ")";
        case 3: return "(" + random_source(rng, depth - 1) + "-" + random_source(rng, depth - 1) + ")";
        case 4: return "(" + random_source(rng, depth - 1) + "*" + random_source(rng, depth - 1) + ")";
        case 5: return "sin(" + random_source(rng, depth - 1) + ")";
        case 6: return "cos(" + random_source(rng, depth - 1) + ")";
        case 7: return "(-" + random_source(rng, depth - 1) + ")";
        case 8: return "exp(cos(" + random_source(rng, depth - 1) + "))";
        default: return "abs(" + random_source(rng, depth - 1) + ")";
    }
}

}  // namespace

TEST_CASE("round-trip: print then parse evaluates identically at 100 points") {
    std::mt19937 rng(20240917);
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    for (int trial = 0; trial < 60; ++trial) {
        const std::string src = random_source(rng, 4);
        Expression e = Expression::parse(src);
        Expression back = Expression::parse(e.to_string());
        for (int i = 0; i < 100; ++i) {
            const double x = xs(rng);
            const double v1 = e(x);
            const double v2 = back(x);
            CHECK(v1 == v2);  // bit-identical: same tree shape, same arithmetic
        }
    }
}

TEST_CASE("parsing is pure: identical input gives identical trees") {
    Expression a = Expression::parse("sin(z)*exp(z)+z^2");
    Expression b = Expression::parse("sin(z)*exp(z)+z^2");
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xs(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const double x = xs(rng);
        CHECK(a(x) == b(x));
    }
}
