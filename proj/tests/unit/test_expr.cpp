#include <doctest.h>

#include <cmath>

#include "smb/expr.hpp"

using smb::Expr;

TEST_CASE("expression basics") {
    const Expr e = Expr::compile("y*z + 2", {"x", "y", "z"});
    CHECK(e.eval3(0, 3, 4) == doctest::Approx(14.0));

    const Expr prec = Expr::compile("2 + 3 * 4 ^ 2", {});
    CHECK(prec(std::span<const double>{}) == doctest::Approx(50.0));

    // ^ is right associative: 2^(3^2) = 512
    const Expr pow = Expr::compile("2 ^ 3 ^ 2", {});
    CHECK(pow(std::span<const double>{}) == doctest::Approx(512.0));

    const Expr un = Expr::compile("-x^2", {"x"});
    CHECK(un.eval1(3) == doctest::Approx(-9.0));  // unary minus binds the power

    const Expr fn = Expr::compile("exp(-x) + tanh(x)*cos(0) + abs(-2)", {"x"});
    CHECK(fn.eval1(1.0) == doctest::Approx(std::exp(-1.0) + std::tanh(1.0) + 2.0));

    const Expr pi = Expr::compile("sin(pi/2)", {});
    CHECK(pi(std::span<const double>{}) == doctest::Approx(1.0));
}

TEST_CASE("expression errors carry a position") {
    CHECK_THROWS_AS(Expr::compile("x +", {"x"}), smb::ExprError);
    CHECK_THROWS_AS(Expr::compile("foo(3)", {}), smb::ExprError);
    CHECK_THROWS_AS(Expr::compile("x y", {"x"}), smb::ExprError);
    CHECK_THROWS_AS(Expr::compile("q + 1", {"x"}), smb::ExprError);
    try {
        Expr::compile("x + @", {"x"});
        CHECK(false);
    } catch (const smb::ExprError& e) {
        CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
}
