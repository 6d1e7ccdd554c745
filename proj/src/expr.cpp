#include "degenpde/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace degenpde {

struct Expr::Node {
    enum class Op {
        Const, Var, Time,
        Add, Sub, Mul, Div, Pow, Neg,
        Exp, Log, Sqrt, Abs, Max, Min
    };
    Op op;
    double value = 0.0;   // Const
    int var = 0;          // Var: 0-based spatial index
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Op = Expr::Node::Op;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    Parser(const std::string& s, int dim) : s_(s), dim_(dim) {}

    NodePtr run() {
        auto n = expression();
        skipws();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return n;
    }

private:
    const std::string& s_;
    int dim_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("expression parse error at offset " +
                                    std::to_string(pos_) + ": " + why +
                                    " in \"" + s_ + "\"");
    }

    void skipws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skipws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skipws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expression() {
        auto lhs = term();
        for (;;) {
            if (consume('+')) lhs = make(Op::Add, lhs, term());
            else if (consume('-')) lhs = make(Op::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        auto lhs = unary();
        for (;;) {
            if (consume('*')) lhs = make(Op::Mul, lhs, unary());
            else if (consume('/')) lhs = make(Op::Div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (consume('-')) return make(Op::Neg, unary());
        if (consume('+')) return unary();
        return power();
    }

    NodePtr power() {
        auto base = atom();
        if (consume('^'))
            return make(Op::Pow, base, unary()); // right associative
        return base;
    }

    NodePtr atom() {
        skipws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto n = expression();
            if (!consume(')')) fail("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return identifier();
        fail("unexpected character");
    }

    NodePtr number() {
        size_t end = pos_;
        while (end < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
                s_[end] == 'e' || s_[end] == 'E' ||
                ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
                 (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
            ++end;
        auto n = std::make_shared<Expr::Node>();
        n->op = Op::Const;
        try {
            n->value = std::stod(s_.substr(pos_, end - pos_));
        } catch (const std::exception&) {
            fail("bad numeric literal");
        }
        pos_ = end;
        return n;
    }

    NodePtr identifier() {
        size_t end = pos_;
        while (end < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
            ++end;
        std::string name = s_.substr(pos_, end - pos_);
        pos_ = end;

        if (name == "t") return make(Op::Time);
        if (name.size() >= 2 && name[0] == 'x') {
            int idx = 0;
            try { idx = std::stoi(name.substr(1)); } catch (const std::exception&) { idx = 0; }
            if (idx >= 1 && idx <= dim_) {
                auto n = std::make_shared<Expr::Node>();
                n->op = Op::Var;
                n->var = idx - 1;
                return n;
            }
            fail("coordinate " + name + " out of range for dimension " + std::to_string(dim_));
        }

        auto unaryFn = [&](Op op) {
            if (!consume('(')) fail("expected '(' after " + name);
            auto a = expression();
            if (!consume(')')) fail("expected ')'");
            return make(op, a);
        };
        auto binaryFn = [&](Op op) {
            if (!consume('(')) fail("expected '(' after " + name);
            auto a = expression();
            if (!consume(',')) fail("expected ','");
            auto b = expression();
            if (!consume(')')) fail("expected ')'");
            return make(op, a, b);
        };

        if (name == "exp") return unaryFn(Op::Exp);
        if (name == "log") return unaryFn(Op::Log);
        if (name == "sqrt") return unaryFn(Op::Sqrt);
        if (name == "abs") return unaryFn(Op::Abs);
        if (name == "max") return binaryFn(Op::Max);
        if (name == "min") return binaryFn(Op::Min);
        fail("unknown identifier '" + name + "'");
    }
};

double evalNode(const Expr::Node& n, double t, const std::vector<double>& x) {
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Time:  return t;
        case Op::Var:   return x[static_cast<size_t>(n.var)];
        case Op::Add:   return evalNode(*n.a, t, x) + evalNode(*n.b, t, x);
        case Op::Sub:   return evalNode(*n.a, t, x) - evalNode(*n.b, t, x);
        case Op::Mul:   return evalNode(*n.a, t, x) * evalNode(*n.b, t, x);
        case Op::Div:   return evalNode(*n.a, t, x) / evalNode(*n.b, t, x);
        case Op::Pow:   return std::pow(evalNode(*n.a, t, x), evalNode(*n.b, t, x));
        case Op::Neg:   return -evalNode(*n.a, t, x);
        case Op::Exp:   return std::exp(evalNode(*n.a, t, x));
        case Op::Log:   return std::log(evalNode(*n.a, t, x));
        case Op::Sqrt:  return std::sqrt(evalNode(*n.a, t, x));
        case Op::Abs:   return std::abs(evalNode(*n.a, t, x));
        case Op::Max:   return std::max(evalNode(*n.a, t, x), evalNode(*n.b, t, x));
        case Op::Min:   return std::min(evalNode(*n.a, t, x), evalNode(*n.b, t, x));
    }
    return 0.0;
}

} // namespace

Expr Expr::parse(const std::string& text, int dim) {
    Expr e;
    e.root_ = Parser(text, dim).run();
    e.text_ = text;
    e.dim_ = dim;
    return e;
}

double Expr::eval(double t, const std::vector<double>& x) const {
    if (!root_) throw std::logic_error("evaluating empty expression");
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("expression evaluated with wrong spatial dimension");
    return evalNode(*root_, t, x);
}

} // namespace degenpde
