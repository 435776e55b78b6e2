#pragma once

#include <memory>
#include <string>

#include "semihilbert/complex_matrix.hpp"

namespace semihilbert {

/// Compiled arithmetic expression in the index variable n. Grammar:
/// decimal numbers (with exponents), n, i, pi, + - * / ^, the functions
/// exp sin cos sqrt conj abs, and parentheses. ^ binds tighter than
/// unary minus and associates to the right; * and / bind tighter than
/// + and -, all left associative.
class SeqExpr {
public:
    class Node;

    /// Throws ParseError with a byte position on malformed input or an
    /// unknown identifier. Input is capped at 4 KiB.
    static SeqExpr parse(const std::string& text);

    /// Evaluate at index n >= 1. Division by zero raises ModelError.
    Complex eval(long n) const;

    const std::string& source() const noexcept { return source_; }

    /// Fully parenthesized rendering; parsing it back yields an
    /// evaluator equal to this one.
    std::string canonical() const;

private:
    SeqExpr(std::shared_ptr<const Node> root, std::string source);

    std::shared_ptr<const Node> root_;
    std::string source_;
};

} // namespace semihilbert
