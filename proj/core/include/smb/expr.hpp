#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smb {

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Compiled arithmetic expression over named variables.
///
/// Grammar (EBNF, also documented in the README):
///
///   expr    = term { ("+" | "-") term } ;
///   term    = factor { ("*" | "/") factor } ;
///   factor  = ( "-" | "+" ) factor | power ;    (* -x^2 = -(x^2) *)
///   power   = primary [ "^" factor ] ;          (* right associative *)
///   primary = number | ident | ident "(" expr ")" | "(" expr ")" ;
///   ident   = letter { letter | digit | "_" } ;
///
/// Known functions: exp, sin, cos, tanh, abs, sqrt, log, erfc.
/// Variables are bound by position at compile time.
class Expr {
public:
    /// Parse `text` with the given variable names.  Throws ExprError with a
    /// column position on malformed input or unknown identifiers.
    static Expr compile(const std::string& text, std::vector<std::string> variables);

    double operator()(std::span<const double> args) const;

    double eval1(double x) const { return (*this)(std::span<const double>(&x, 1)); }
    double eval2(double x, double y) const {
        const double a[2] = {x, y};
        return (*this)(std::span<const double>(a, 2));
    }
    double eval3(double x, double y, double z) const {
        const double a[3] = {x, y, z};
        return (*this)(std::span<const double>(a, 3));
    }

    const std::string& text() const { return text_; }

    struct Node;  // implementation detail, defined in expr.cpp

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
    std::size_t arity_ = 0;
};

}  // namespace smb
