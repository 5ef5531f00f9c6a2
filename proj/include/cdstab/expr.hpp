#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cdstab/errors.hpp"

namespace cdstab::expr {

// A parsed scalar function of one variable. Immutable after parse; cheap to
// copy and safe to evaluate from many threads at once.
//
// Grammar (^ binds tightest and is right-associative, unary minus binds
// below ^):
//   expr    := term  (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | var | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | log | sqrt | abs
// Numbers are decimal literals with optional exponent, evaluated in binary64.
class Expression {
public:
    Expression() = default;

    // `var` names the single free variable accepted by the grammar.
    // Throws ParseError with a byte offset on malformed input.
    static Expression parse(std::string_view text, std::string_view var = "z");

    // Throws EvalError when evaluation leaves the real domain; never
    // returns a non-finite value.
    double operator()(double x) const;

    // Fully parenthesized form; parse(to_string()) evaluates identically.
    std::string to_string() const;

    const std::string& source() const { return source_; }
    bool empty() const { return nodes_.empty(); }

private:
    enum class Op : unsigned char {
        kConstant, kVariable,
        kNegate, kSin, kCos, kExp, kLog, kSqrt, kAbs,
        kAdd, kSub, kMul, kDiv, kPow,
    };
    struct Node {
        Op op;
        double value = 0.0;   // kConstant payload
        int lhs = -1, rhs = -1;
    };

    double eval_node(int idx, double x) const;
    void print_node(int idx, std::string& out) const;

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string source_;
    std::string var_;

    friend class Parser;
};

}  // namespace cdstab::expr
