#include "cdstab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace cdstab::expr {

namespace {

std::string offset_msg(const std::string& what, std::size_t off) {
    return what + " at offset " + std::to_string(off);
}

}  // namespace

class Parser {
public:
    Parser(std::string_view text, std::string_view var, Expression& out)
        : text_(text), var_(var), out_(out) {}

    void run() {
        if (text_.empty())
            throw ParseError("empty expression", 0);
        out_.root_ = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(offset_msg("unexpected trailing input", pos_), pos_);
        out_.source_ = std::string(text_);
        out_.var_ = std::string(var_);
    }

private:
    using Op = Expression::Op;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) { ++pos_; return true; }
        return false;
    }

    int add(Expression::Node n) {
        out_.nodes_.push_back(n);
        return static_cast<int>(out_.nodes_.size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            if (accept('+'))      lhs = add({Op::kAdd, 0.0, lhs, parse_term()});
            else if (accept('-')) lhs = add({Op::kSub, 0.0, lhs, parse_term()});
            else return lhs;
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*'))      lhs = add({Op::kMul, 0.0, lhs, parse_unary()});
            else if (accept('/')) lhs = add({Op::kDiv, 0.0, lhs, parse_unary()});
            else return lhs;
        }
    }

    int parse_unary() {
        if (accept('-'))
            return add({Op::kNegate, 0.0, parse_unary(), -1});
        return parse_power();
    }

    int parse_power() {
        int base = parse_primary();
        if (accept('^'))
            return add({Op::kPow, 0.0, base, parse_unary()});  // right-assoc, -x allowed in exponent
        return base;
    }

    int parse_primary() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError(offset_msg("expected operand", pos_), pos_);
        char c = text_[pos_];
        if (c == '(') {
            std::size_t open = pos_++;
            int inner = parse_expr();
            if (!accept(')'))
                throw ParseError(offset_msg("unbalanced '(' opened", open), pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        throw ParseError(offset_msg(std::string("unexpected character '") + c + "'", pos_), pos_);
    }

    int parse_number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc())
            throw ParseError(offset_msg("malformed number", pos_), pos_);
        pos_ += static_cast<std::size_t>(ptr - begin);
        return add({Op::kConstant, value, -1, -1});
    }

    int parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        if (name == var_)
            return add({Op::kVariable, 0.0, -1, -1});
        Op op;
        if      (name == "sin")  op = Op::kSin;
        else if (name == "cos")  op = Op::kCos;
        else if (name == "exp")  op = Op::kExp;
        else if (name == "log")  op = Op::kLog;
        else if (name == "sqrt") op = Op::kSqrt;
        else if (name == "abs")  op = Op::kAbs;
        else
            throw ParseError(offset_msg("unknown identifier '" + std::string(name) + "'", start), start);
        if (!accept('('))
            throw ParseError(offset_msg("expected '(' after function '" + std::string(name) + "'", pos_), pos_);
        int arg = parse_expr();
        if (!accept(')'))
            throw ParseError(offset_msg("unbalanced '(' in call of '" + std::string(name) + "'", pos_), pos_);
        return add({op, 0.0, arg, -1});
    }

    std::string_view text_;
    std::string_view var_;
    Expression& out_;
    std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text, std::string_view var) {
    Expression e;
    Parser(text, var, e).run();
    return e;
}

double Expression::eval_node(int idx, double x) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    auto finite_or_throw = [&](double v, const char* what) {
        if (!std::isfinite(v))
            throw EvalError(std::string(what) + " produced a non-finite value in '" + source_ + "'");
        return v;
    };
    switch (n.op) {
        case Op::kConstant: return n.value;
        case Op::kVariable: return x;
        case Op::kNegate:   return -eval_node(n.lhs, x);
        case Op::kSin:      return std::sin(eval_node(n.lhs, x));
        case Op::kCos:      return std::cos(eval_node(n.lhs, x));
        case Op::kExp:      return finite_or_throw(std::exp(eval_node(n.lhs, x)), "exp");
        case Op::kSqrt: {
            double a = eval_node(n.lhs, x);
            if (a < 0.0)
                throw EvalError("sqrt of negative value " + std::to_string(a) + " in '" + source_ + "'");
            return std::sqrt(a);
        }
        case Op::kLog: {
            double a = eval_node(n.lhs, x);
            if (a <= 0.0)
                throw EvalError("log of non-positive value " + std::to_string(a) + " in '" + source_ + "'");
            return std::log(a);
        }
        case Op::kAbs: return std::fabs(eval_node(n.lhs, x));
        case Op::kAdd: return finite_or_throw(eval_node(n.lhs, x) + eval_node(n.rhs, x), "'+'");
        case Op::kSub: return finite_or_throw(eval_node(n.lhs, x) - eval_node(n.rhs, x), "'-'");
        case Op::kMul: return finite_or_throw(eval_node(n.lhs, x) * eval_node(n.rhs, x), "'*'");
        case Op::kDiv: {
            double a = eval_node(n.lhs, x);
            double b = eval_node(n.rhs, x);
            if (b == 0.0)
                throw EvalError("division by zero at input " + std::to_string(x) + " in '" + source_ + "'");
            return finite_or_throw(a / b, "'/'");
        }
        case Op::kPow: {
            double a = eval_node(n.lhs, x);
            double b = eval_node(n.rhs, x);
            double v = std::pow(a, b);
            if (!std::isfinite(v))
                throw EvalError("'^' of base " + std::to_string(a) + " and exponent " +
                                std::to_string(b) + " left the real domain in '" + source_ + "'");
            return v;
        }
    }
    throw EvalError("corrupt expression node");
}

double Expression::operator()(double x) const {
    if (root_ < 0)
        throw EvalError("evaluating an empty expression");
    return eval_node(root_, x);
}

void Expression::print_node(int idx, std::string& out) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    auto binary = [&](const char* sym) {
        out += '(';
        print_node(n.lhs, out);
        out += sym;
        print_node(n.rhs, out);
        out += ')';
    };
    auto call = [&](const char* name) {
        out += name;
        out += '(';
        print_node(n.lhs, out);
        out += ')';
    };
    switch (n.op) {
        case Op::kConstant: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        }
        case Op::kVariable: out += var_; return;
        case Op::kNegate:
            out += "(-";
            print_node(n.lhs, out);
            out += ')';
            return;
        case Op::kSin:  call("sin");  return;
        case Op::kCos:  call("cos");  return;
        case Op::kExp:  call("exp");  return;
        case Op::kLog:  call("log");  return;
        case Op::kSqrt: call("sqrt"); return;
        case Op::kAbs:  call("abs");  return;
        case Op::kAdd:  binary("+");  return;
        case Op::kSub:  binary("-");  return;
        case Op::kMul:  binary("*");  return;
        case Op::kDiv:  binary("/");  return;
        case Op::kPow:  binary("^");  return;
    }
}

std::string Expression::to_string() const {
    std::string out;
    if (root_ >= 0) print_node(root_, out);
    return out;
}

}  // namespace cdstab::expr
