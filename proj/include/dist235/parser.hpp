#pragma once

#include <span>
#include <string>
#include <string_view>

#include "dist235/rational_function.hpp"

namespace dist235 {

/// Parses an arithmetic expression over the named variables.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' digits)?
///   primary := number | name | '(' expr ')'
///   number  := digits ('.' digits)?
///
/// Unary minus binds looser than '^', so "-x^2" is -(x^2).
/// Throws ParseError (with byte offset) on syntax errors and unknown names,
/// ZeroDivisionError when dividing by an expression equal to zero.
RationalFunction parse_expression(std::string_view text, std::span<const std::string> variables);

}  // namespace dist235
