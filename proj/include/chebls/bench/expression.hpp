#pragma once

/// \file expression.hpp
/// Arithmetic expressions in one variable `t`.
///
/// Grammar, loosest binding first: + and -, then * and /, then unary minus,
/// then ^ (right associative). So -t^2 is -(t^2) and 2^-1 is 2^(-1).
/// Functions: sin cos tan tanh sinh cosh exp log sqrt abs, one argument each.
/// The constant `pi` is also recognised.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chebls::bench {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class ExprOp { number, variable, add, sub, mul, div, pow, neg, call };
enum class MathFn { sin, cos, tan, tanh, sinh, cosh, exp, log, sqrt, abs };

struct ExprNode {
    ExprOp op = ExprOp::number;
    double value = 0.0;
    MathFn fn = MathFn::sin;
    ExprPtr lhs;
    ExprPtr rhs;
};

namespace detail {

struct FnName {
    std::string_view name;
    MathFn fn;
};

inline constexpr FnName fn_names[] = {
    {"sin", MathFn::sin},   {"cos", MathFn::cos},   {"tan", MathFn::tan},   {"tanh", MathFn::tanh},
    {"sinh", MathFn::sinh}, {"cosh", MathFn::cosh}, {"exp", MathFn::exp},   {"log", MathFn::log},
    {"sqrt", MathFn::sqrt}, {"abs", MathFn::abs},
};

inline std::string_view fn_name(MathFn fn) {
    for (const auto& e : fn_names) {
        if (e.fn == fn) {
            return e.name;
        }
    }
    return "?";
}

inline double apply_fn(MathFn fn, double x) {
    switch (fn) {
        case MathFn::sin: return std::sin(x);
        case MathFn::cos: return std::cos(x);
        case MathFn::tan: return std::tan(x);
        case MathFn::tanh: return std::tanh(x);
        case MathFn::sinh: return std::sinh(x);
        case MathFn::cosh: return std::cosh(x);
        case MathFn::exp: return std::exp(x);
        case MathFn::log: return std::log(x);
        case MathFn::sqrt: return std::sqrt(x);
        case MathFn::abs: return std::abs(x);
    }
    return std::nan("");
}

inline ExprPtr make_node(ExprOp op, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr parse() {
        ExprPtr e = expression(0);
        skip_ws();
        if (pos_ < src_.size()) {
            if (src_[pos_] == ')') {
                throw ParseError("unbalanced ')'", pos_);
            }
            throw ParseError(std::string("expected operator, found '") + src_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    static int precedence(char c) {
        switch (c) {
            case '+':
            case '-': return 1;
            case '*':
            case '/': return 2;
            case '^': return 4;
            default: return -1;
        }
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    ExprPtr expression(int min_prec) {
        ExprPtr lhs = prefix();
        for (;;) {
            skip_ws();
            if (pos_ >= src_.size()) {
                break;
            }
            const char c = src_[pos_];
            const int prec = precedence(c);
            if (prec < 0 || prec < min_prec) {
                break;
            }
            ++pos_;
            ExprOp op = ExprOp::add;
            switch (c) {
                case '+': op = ExprOp::add; break;
                case '-': op = ExprOp::sub; break;
                case '*': op = ExprOp::mul; break;
                case '/': op = ExprOp::div; break;
                default: op = ExprOp::pow; break;
            }
            // ^ is right associative; everything else groups to the left.
            ExprPtr rhs = (op == ExprOp::pow) ? power_operand() : expression(prec + 1);
            lhs = make_node(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    // Right operand of ^: a unary-minus chain followed by a power expression.
    ExprPtr power_operand() {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '-') {
            ++pos_;
            return make_node(ExprOp::neg, power_operand());
        }
        if (pos_ < src_.size() && src_[pos_] == '+') {
            ++pos_;
            return power_operand();
        }
        return expression(4);
    }

    ExprPtr prefix() {
        skip_ws();
        if (pos_ >= src_.size()) {
            throw ParseError("unexpected end of input, expected operand", pos_);
        }
        const char c = src_[pos_];
        if (c == '-' || c == '+') {
            ++pos_;
            // Unary sign binds looser than ^ but tighter than * and /.
            ExprPtr operand = expression(3);
            return c == '-' ? make_node(ExprOp::neg, std::move(operand)) : operand;
        }
        if (c == '(') {
            const std::size_t open = pos_++;
            ExprPtr inner = expression(0);
            skip_ws();
            if (pos_ >= src_.size() || src_[pos_] != ')') {
                throw ParseError("unbalanced '(' opened", open);
            }
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return identifier();
        }
        throw ParseError(std::string("unexpected character '") + c + "', expected operand", pos_);
    }

    ExprPtr number() {
        const std::size_t start = pos_;
        const std::string rest(src_.substr(pos_));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(rest, &used);
        } catch (const std::exception&) {
            throw ParseError("malformed number", start);
        }
        pos_ += used;
        auto n = std::make_shared<ExprNode>();
        n->op = ExprOp::number;
        n->value = v;
        return n;
    }

    ExprPtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view id = src_.substr(start, pos_ - start);
        if (id == "t") {
            return make_node(ExprOp::variable);
        }
        if (id == "pi") {
            auto n = std::make_shared<ExprNode>();
            n->value = std::numbers::pi;
            return n;
        }
        for (const auto& e : fn_names) {
            if (e.name == id) {
                return call(e.fn, start);
            }
        }
        throw ParseError("unknown identifier '" + std::string(id) + "'", start);
    }

    ExprPtr call(MathFn fn, std::size_t start) {
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != '(') {
            throw ParseError("function '" + std::string(fn_name(fn)) + "' expects '(' and one argument", pos_);
        }
        const std::size_t open = pos_++;
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == ')') {
            throw ParseError("function '" + std::string(fn_name(fn)) + "' takes 1 argument, got 0", start);
        }
        ExprPtr arg = expression(0);
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == ',') {
            throw ParseError("function '" + std::string(fn_name(fn)) + "' takes 1 argument, got more", pos_);
        }
        if (pos_ >= src_.size() || src_[pos_] != ')') {
            throw ParseError("unbalanced '(' opened", open);
        }
        ++pos_;
        auto n = std::make_shared<ExprNode>();
        n->op = ExprOp::call;
        n->fn = fn;
        n->lhs = std::move(arg);
        return n;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

inline double eval_node(const ExprNode& n, double t) {
    switch (n.op) {
        case ExprOp::number: return n.value;
        case ExprOp::variable: return t;
        case ExprOp::add: return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
        case ExprOp::sub: return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
        case ExprOp::mul: return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
        case ExprOp::div: return eval_node(*n.lhs, t) / eval_node(*n.rhs, t);
        case ExprOp::pow: {
            const double base = eval_node(*n.lhs, t);
            if (n.rhs->op == ExprOp::number) {
                const double e = n.rhs->value;
                if (e == std::floor(e) && std::abs(e) <= 64) {
                    return std::pow(base, static_cast<int>(e));
                }
            }
            return std::pow(base, eval_node(*n.rhs, t));
        }
        case ExprOp::neg: return -eval_node(*n.lhs, t);
        case ExprOp::call: return apply_fn(n.fn, eval_node(*n.lhs, t));
    }
    return std::nan("");
}

inline void print_node(const ExprNode& n, std::ostringstream& os) {
    switch (n.op) {
        case ExprOp::number: {
            std::ostringstream num;
            num.precision(17);
            num << n.value;
            os << '(' << num.str() << ')';
            return;
        }
        case ExprOp::variable: os << 't'; return;
        case ExprOp::neg:
            os << "(-";
            print_node(*n.lhs, os);
            os << ')';
            return;
        case ExprOp::call:
            os << fn_name(n.fn) << '(';
            print_node(*n.lhs, os);
            os << ')';
            return;
        default: break;
    }
    const char sym = n.op == ExprOp::add ? '+' : n.op == ExprOp::sub ? '-' : n.op == ExprOp::mul ? '*'
                   : n.op == ExprOp::div ? '/' : '^';
    os << '(';
    print_node(*n.lhs, os);
    os << ' ' << sym << ' ';
    print_node(*n.rhs, os);
    os << ')';
}

}  // namespace detail

class Expression {
public:
    explicit Expression(ExprPtr root) : root_(std::move(root)) {}

    double operator()(double t) const { return detail::eval_node(*root_, t); }

    /// Fully parenthesised form that parses back to the same tree.
    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        detail::print_node(*root_, os);
        return os.str();
    }

    [[nodiscard]] const ExprNode& root() const noexcept { return *root_; }

private:
    ExprPtr root_;
};

[[nodiscard]] inline Expression parse_expression(std::string_view src) {
    return Expression(detail::Parser(src).parse());
}

}  // namespace chebls::bench
