#include "smb/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace smb {

namespace {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Call };

using Fn = double (*)(double);

double fn_abs(double x) { return std::fabs(x); }

Fn lookup_function(const std::string& name) {
    if (name == "exp") return static_cast<Fn>(std::exp);
    if (name == "sin") return static_cast<Fn>(std::sin);
    if (name == "cos") return static_cast<Fn>(std::cos);
    if (name == "tanh") return static_cast<Fn>(std::tanh);
    if (name == "abs") return fn_abs;
    if (name == "sqrt") return static_cast<Fn>(std::sqrt);
    if (name == "log") return static_cast<Fn>(std::log);
    if (name == "erfc") return static_cast<Fn>(std::erfc);
    return nullptr;
}

}  // namespace

struct Expr::Node {
    Op op = Op::Const;
    double value = 0.0;
    std::size_t var = 0;
    Fn fn = nullptr;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(std::span<const double> args) const {
        switch (op) {
            case Op::Const: return value;
            case Op::Var: return args[var];
            case Op::Add: return lhs->eval(args) + rhs->eval(args);
            case Op::Sub: return lhs->eval(args) - rhs->eval(args);
            case Op::Mul: return lhs->eval(args) * rhs->eval(args);
            case Op::Div: return lhs->eval(args) / rhs->eval(args);
            case Op::Pow: return std::pow(lhs->eval(args), rhs->eval(args));
            case Op::Neg: return -lhs->eval(args);
            case Op::Call: return fn(lhs->eval(args));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

}  // namespace

// Recursive-descent parser over a flat character view.
class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    using Node = Expr::Node;

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            skip_ws();
            if (accept('+')) lhs = binary(Op::Add, lhs, term());
            else if (accept('-')) lhs = binary(Op::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) lhs = binary(Op::Mul, lhs, factor());
            else if (accept('/')) lhs = binary(Op::Div, lhs, factor());
            else return lhs;
        }
    }

    // unary minus binds weaker than ^, so -x^2 = -(x^2); 2^-3 still parses
    NodePtr factor() {
        skip_ws();
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->op = Op::Neg;
            n->lhs = factor();
            return n;
        }
        if (accept('+')) return factor();
        NodePtr base = primary();
        skip_ws();
        if (accept('^')) return binary(Op::Pow, base, factor());  // right assoc
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (accept('(')) {
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(std::string("unexpected character '") + c + "'");
        return nullptr;
    }

    NodePtr number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        auto n = std::make_shared<Node>();
        n->op = Op::Const;
        n->value = v;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        skip_ws();
        if (accept('(')) {
            const Fn fn = lookup_function(name);
            if (!fn) fail("unknown function '" + name + "'");
            auto n = std::make_shared<Node>();
            n->op = Op::Call;
            n->fn = fn;
            n->lhs = expr();
            expect(')');
            return n;
        }
        if (name == "pi") {
            auto n = std::make_shared<Node>();
            n->op = Op::Const;
            n->value = 3.14159265358979323846;
            return n;
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == name) {
                auto n = std::make_shared<Node>();
                n->op = Op::Var;
                n->var = i;
                return n;
            }
        }
        fail("unknown identifier '" + name + "'");
        return nullptr;
    }

    NodePtr binary(Op op, NodePtr lhs, NodePtr rhs) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ExprError("expression error at column " + std::to_string(pos_ + 1) + ": " + what +
                        " in \"" + text_ + "\"");
    }

    const std::string& text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

Expr Expr::compile(const std::string& text, std::vector<std::string> variables) {
    Expr e;
    Parser parser(text, variables);
    e.root_ = parser.parse();
    e.text_ = text;
    e.arity_ = variables.size();
    return e;
}

double Expr::operator()(std::span<const double> args) const {
    if (args.size() < arity_) throw ExprError("expression called with too few arguments");
    return root_->eval(args);
}

}  // namespace smb
