#pragma once

// Expression language for potentials and first integrals.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('-' | '+') unary | power
//   power  := primary ('^' unary)?          right-associative
//   primary:= integer | 'i' | identifier | '(' expr ')'
//
// Exponents must fold to non-negative integer constants and divisors to
// nonzero constants. Implicit multiplication is not accepted.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "expot/poly.hpp"

namespace expot {

/// Rejected input. offset() is a byte position inside the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset)
    {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

enum class TokenKind { Identifier, Integer, ImagUnit, Plus, Minus, Star, Slash, Caret, LParen, RParen };

struct Token {
    TokenKind kind;
    std::size_t begin;  ///< byte offset of the first character
    std::size_t end;    ///< one past the last character
    std::string text;
};

std::vector<Token> tokenize(std::string_view input);

struct ExprNode;
using ExprPtr = std::unique_ptr<ExprNode>;

struct ExprNode {
    enum class Kind { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind;
    std::size_t offset = 0;
    GR value;          // Constant
    std::string name;  // Variable
    ExprPtr lhs;       // unary operand / left operand
    ExprPtr rhs;
};

/// Syntax tree for `input`; no variable resolution.
ExprPtr parse_ast(std::string_view input);

/// Exact polynomial for `input` in the given variable set.
Poly parse(std::string_view input, VarSet vars);

/// Canonical text: graded-lex descending, re-parses to the same Poly.
std::string render(const Poly& f);

}  // namespace expot
