#include "minsurf/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace minsurf {

namespace {

enum class Op { Const, VarU, VarV, Add, Sub, Mul, Neg, Pow, Sin, Cos };

} // namespace

struct Expr::Node {
    Op op = Op::Const;
    double value = 0.0; // Const
    int exponent = 0;   // Pow
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr)
{
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string &text) : text_(text) {}

    NodePtr run()
    {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw std::invalid_argument("expression error at position " +
                                    std::to_string(pos_) + ": " + msg +
                                    " in \"" + text_ + "\"");
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expr()
    {
        NodePtr lhs = term();
        for (;;) {
            if (consume('+')) {
                lhs = make(Op::Add, lhs, term());
            } else if (consume('-')) {
                lhs = make(Op::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term()
    {
        NodePtr lhs = factor();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                lhs = make(Op::Mul, lhs, factor());
            } else if (c == '/') {
                fail("division is not supported");
            } else {
                return lhs;
            }
        }
    }

    NodePtr factor()
    {
        if (consume('-')) {
            return make(Op::Neg, factor());
        }
        NodePtr b = base();
        if (consume('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            if (pos_ == start) {
                fail("expected a nonnegative integer exponent");
            }
            auto n = std::make_shared<Expr::Node>();
            n->op = Op::Pow;
            n->lhs = b;
            n->exponent = std::stoi(text_.substr(start, pos_ - start));
            return n;
        }
        return b;
    }

    NodePtr base()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!consume(')')) {
                fail("expected ')'");
            }
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            const std::string word = text_.substr(start, pos_ - start);
            if (word == "u") {
                return make(Op::VarU);
            }
            if (word == "v") {
                return make(Op::VarV);
            }
            if (word == "pi") {
                auto n = std::make_shared<Expr::Node>();
                n->op = Op::Const;
                n->value = std::numbers::pi;
                return n;
            }
            if (word == "sin" || word == "cos") {
                if (!consume('(')) {
                    fail("expected '(' after " + word);
                }
                skip_ws();
                NodePtr arg;
                if (consume('u')) {
                    arg = make(Op::VarU);
                } else if (consume('v')) {
                    arg = make(Op::VarV);
                } else {
                    fail(word + " accepts a bare 'u' or 'v' argument only");
                }
                if (!consume(')')) {
                    fail("expected ')'");
                }
                return make(word == "sin" ? Op::Sin : Op::Cos, arg);
            }
            fail("unknown identifier '" + word + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number()
    {
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                ++pos_;
            }
            digits();
        }
        auto n = std::make_shared<Expr::Node>();
        n->op = Op::Const;
        n->value = std::stod(text_.substr(start, pos_ - start));
        return n;
    }

    const std::string &text_;
    std::size_t pos_ = 0;
};

Jet<double> eval_node(const Expr::Node &n, double u, double v, int order)
{
    switch (n.op) {
    case Op::Const:
        return Jet<double>::constant(n.value, order);
    case Op::VarU:
        return Jet<double>::seed_u(u, order);
    case Op::VarV:
        return Jet<double>::seed_v(v, order);
    case Op::Add:
        return eval_node(*n.lhs, u, v, order) + eval_node(*n.rhs, u, v, order);
    case Op::Sub:
        return eval_node(*n.lhs, u, v, order) - eval_node(*n.rhs, u, v, order);
    case Op::Mul:
        return eval_node(*n.lhs, u, v, order) * eval_node(*n.rhs, u, v, order);
    case Op::Neg:
        return -eval_node(*n.lhs, u, v, order);
    case Op::Pow: {
        Jet<double> basejet = eval_node(*n.lhs, u, v, order);
        Jet<double> acc = Jet<double>::constant(1.0, order);
        for (int k = 0; k < n.exponent; ++k) {
            acc = acc * basejet;
        }
        return acc;
    }
    case Op::Sin:
        return sin(eval_node(*n.lhs, u, v, order));
    case Op::Cos:
        return cos(eval_node(*n.lhs, u, v, order));
    }
    throw std::logic_error("eval_node: unreachable");
}

} // namespace

Expr Expr::parse(const std::string &text)
{
    Expr e;
    e.text_ = text;
    e.root_ = Parser(text).run();
    return e;
}

Jet<double> Expr::eval(double u, double v, int order) const
{
    if (!root_) {
        throw std::logic_error("Expr: evaluating an unparsed expression");
    }
    return eval_node(*root_, u, v, order);
}

double Expr::eval(double u, double v) const
{
    return eval(u, v, 0).value();
}

} // namespace minsurf
