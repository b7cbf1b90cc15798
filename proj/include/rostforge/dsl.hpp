#pragma once

#include <stdexcept>
#include <string>

#include "rostforge/element.hpp"
#include "rostforge/field.hpp"
#include "rostforge/milnor.hpp"
#include "rostforge/rewrite.hpp"
#include "rostforge/valuation.hpp"

namespace rostforge {

/// Parse failure with the offending position, for caret diagnostics.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string input, size_t position, const std::string& what);
    const std::string& input() const { return input_; }
    size_t position() const { return position_; }
    /// Two-line message: the input and a caret under the position.
    std::string caret_message() const;

private:
    std::string input_;
    size_t position_;
};

/// Field-tower DSL:
///   field := "Q" | "R" | "C" | "F" p ["^" e] | "NF(" d "," r1 "," r2 ")"
///          | field "(" var {"," var} ")" | field "[" poly "]"
/// with polynomials written in x over the base field. Whitespace-insensitive.
FieldPtr parse_field(const std::string& text);

/// Element expression over a parsed field: integers, rationals, the tower
/// variables, x for the extension generator, g for a finite-field
/// generator; operators + - * / ^ and parentheses.
Element parse_element(const std::string& text, const FieldPtr& field);

/// Symbol and class literals: `{a, b, c}` and `k*{...} - {...} + ...`.
MilnorClass parse_class(const std::string& text, const FieldPtr& field);

/// Valuation literal: "inf", "(poly)" for a point of the line, or a prime.
Valuation parse_valuation(const std::string& text, const FieldPtr& field);

/// Morphism word literal: res[v], nrm[L/E], sym[{...}], rst[E->L] composed
/// with the ring operator (or '.'); objects are inferred from the source.
MorphismWord parse_morphism_word(const std::string& text, const ObjectRef& source);

}  // namespace rostforge
