#pragma once

#include <map>
#include <string>
#include <string_view>

#include "dirac/phase_space.hpp"
#include "dirac/rational_expr.hpp"

namespace dirac
{
/**
 * Parses the expression grammar
 *
 *     expr   := term (("+"|"-") term)*
 *     term   := factor (("*"|"/") factor)*
 *     factor := "-" factor | base ("^" integer)?
 *     base   := number | identifier | "(" expr ")"
 *     number := integer ("/" integer)?
 *
 * A rational literal is written without spaces ("3/4") and is a single base, so
 * "x1/2/3" reads as x1 / (2/3). Implicit multiplication is rejected.
 *
 * Throws SyntaxError or UnknownSymbol.
 */
RationalExpr parse_expression(std::string_view text, PhaseSpace const & ps);

/// Canonical text: terms in decreasing graded-lex order, symbols in declaration order.
std::string print_expression(RationalExpr const & e, PhaseSpace const & ps);
std::string print_polynomial(Polynomial const & p, PhaseSpace const & ps);
std::string print_rational(Rational const & q);

/// Double evaluation at a symbol -> value map covering every symbol of `ps`.
double evaluate(RationalExpr const & e, std::map<std::string, double> const & point, PhaseSpace const & ps);

}  // namespace dirac
