#include "degenpde/expr.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using degenpde::Expr;

TEST_CASE("arithmetic precedence and parentheses") {
    const Expr e = Expr::parse("1 + 2 * 3 ^ 2 - (4 / 2)", 0);
    CHECK(e.eval(0.0, {}) == doctest::Approx(17.0));
}

TEST_CASE("variables t and x1..xd") {
    const Expr e = Expr::parse("t * x1 + x2 ^ 2", 2);
    CHECK(e.eval(2.0, {3.0, 4.0}) == doctest::Approx(22.0));
}

TEST_CASE("unary minus and right-associative power") {
    CHECK(Expr::parse("-2 ^ 2", 0).eval(0, {}) == doctest::Approx(-4.0));
    CHECK(Expr::parse("2 ^ 3 ^ 2", 0).eval(0, {}) == doctest::Approx(512.0));
}

TEST_CASE("functions") {
    CHECK(Expr::parse("exp(1)", 0).eval(0, {}) == doctest::Approx(std::exp(1.0)));
    CHECK(Expr::parse("log(exp(2))", 0).eval(0, {}) == doctest::Approx(2.0));
    CHECK(Expr::parse("sqrt(9)", 0).eval(0, {}) == doctest::Approx(3.0));
    CHECK(Expr::parse("abs(-5)", 0).eval(0, {}) == doctest::Approx(5.0));
    CHECK(Expr::parse("max(1, 2)", 0).eval(0, {}) == doctest::Approx(2.0));
    CHECK(Expr::parse("min(1 - 3, 0)", 0).eval(0, {}) == doctest::Approx(-2.0));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(Expr::parse("1 +", 0), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("x3", 2), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("nosuch(1)", 0), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("(1", 0), std::invalid_argument);
}

TEST_CASE("dimension is enforced at evaluation") {
    const Expr e = Expr::parse("x1", 1);
    CHECK_THROWS(e.eval(0.0, {}));
}
