#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fglkit/steenrod/steenrod.hpp"

namespace fglkit::steenrod {

// Grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)?
//   primary := integer | u<k> | v<k> | head '(' expr ')' | '(' expr ')'
//   head    := beta | P<i> | q<i> | Q<i>
struct Expr
{
    enum class Kind { integer, u, v, sum, difference, negate, product, power, beta, steenrod_power, q, milnor };

    Kind kind;
    std::size_t offset;  // 1-based position of the node's first character
    long value = 0;      // integer literal, generator index, exponent or operation index
    std::vector<std::shared_ptr<const Expr>> children;
};

using ExprPtr = std::shared_ptr<const Expr>;

// Throws ParseError with the 1-based offset and the accepted tokens.
ExprPtr parse_expression(std::string_view text);

// Prefix rendering of the tree, e.g. "Q1(beta(mul(u1,u2)))".
std::string to_string(const Expr& e);

// Throws ExpressionError for generators outside the ring and for q0/Q0.
MotClass evaluate(const Expr& e, const MotRingPtr& ring);

} // namespace fglkit::steenrod
