#pragma once

#include "minsurf/jet.hpp"

#include <memory>
#include <string>

namespace minsurf {

// Parsed closed-form expression in u and v for custom surfaces. The
// grammar is deliberately small so jets never face division or
// t-dependent transcendentals:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := ['-'] base ['^' integer]
//   base   := number | 'u' | 'v' | 'pi' | '(' expr ')'
//           | ('sin' | 'cos') '(' ('u' | 'v') ')'
//
// sin/cos accept a bare parameter only; anything else is rejected.
class Expr {
public:
    static Expr parse(const std::string &text);

    Jet<double> eval(double u, double v, int order) const;
    double eval(double u, double v) const;

    const std::string &text() const { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

} // namespace minsurf
