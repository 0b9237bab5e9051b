#pragma once

#include <functional>
#include <string>

#include "darboux/opring.hpp"

namespace darboux {

// optional resolver for names bound in a session; consulted after context
// symbols, so context names shadow bindings
using BindingLookup = std::function<std::optional<LinOp>(const std::string&)>;

// Grammar (whitespace-insensitive):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' nat)?
//   atom   := nat | name | 'D'name | '(' expr ')'
// 'D' + variable name is a derivation. '*' is never implicit. '/' requires
// an order-0 nonzero divisor and right-multiplies by its inverse.
LinOp parse_operator(const FieldContext& ctx, const std::string& src,
                     const BindingLookup& bindings = nullptr);

// parse_operator restricted to order <= 0
FieldElement parse_field_element(const FieldContext& ctx, const std::string& src,
                                 const BindingLookup& bindings = nullptr);

// Canonical rendering. Derivative terms print in descending graded-lex
// order ("Dx^2 + x*Dx*Dy + Dx + (2+x)*Dy"); coefficient polynomials print
// ascending ("(2+x)"). parse(format(A)) == A.
std::string format_operator(const LinOp& a);
std::string format_field_element(const FieldElement& x);

} // namespace darboux
