#include "hardyop/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <variant>
#include <vector>

#include "hardyop/error.hpp"

namespace hardyop {

struct Expression::Node {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Sqrt, Factorial };
    Kind kind;
    long double value = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    long double eval(long double n) const {
        switch (kind) {
            case Kind::Number: return value;
            case Kind::Var: return n;
            case Kind::Neg: return -lhs->eval(n);
            case Kind::Add: return lhs->eval(n) + rhs->eval(n);
            case Kind::Sub: return lhs->eval(n) - rhs->eval(n);
            case Kind::Mul: return lhs->eval(n) * rhs->eval(n);
            case Kind::Div: return lhs->eval(n) / rhs->eval(n);
            case Kind::Pow: return std::pow(lhs->eval(n), rhs->eval(n));
            case Kind::Exp: return std::exp(lhs->eval(n));
            case Kind::Sqrt: return std::sqrt(lhs->eval(n));
            case Kind::Factorial: return std::tgamma(lhs->eval(n) + 1.0L);
        }
        return 0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr, long double value = 0) {
    auto node = std::make_shared<Expression::Node>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    node->value = value;
    return node;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse() {
        auto node = parse_sum();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected character");
        return node;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InvalidArgument("expression '" + std::string(src_) + "': " + what + " at column " +
                              std::to_string(pos_ + 1));
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr parse_sum() {
        auto lhs = parse_product();
        for (;;) {
            if (accept('+')) lhs = make(Kind::Add, lhs, parse_product());
            else if (accept('-')) lhs = make(Kind::Sub, lhs, parse_product());
            else return lhs;
        }
    }

    NodePtr parse_product() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = make(Kind::Mul, lhs, parse_unary());
            else if (accept('/')) lhs = make(Kind::Div, lhs, parse_unary());
            else return lhs;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make(Kind::Neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        auto base = parse_primary();
        if (accept('^')) return make(Kind::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::string tail(src_.substr(pos_));
            char* end = nullptr;
            long double v = std::strtold(tail.c_str(), &end);
            if (end == tail.c_str()) fail("malformed number");
            pos_ += static_cast<std::size_t>(end - tail.c_str());
            return make(Kind::Number, nullptr, nullptr, v);
        }
        if (accept('(')) {
            auto inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            std::string_view ident = src_.substr(start, pos_ - start);
            if (ident == "n") return make(Kind::Var);
            Kind fn;
            if (ident == "exp") fn = Kind::Exp;
            else if (ident == "sqrt") fn = Kind::Sqrt;
            else if (ident == "factorial") fn = Kind::Factorial;
            else {
                pos_ = start;
                fail("unknown identifier '" + std::string(ident) + "'");
            }
            expect('(');
            auto arg = parse_sum();
            expect(')');
            return make(fn, arg);
        }
        fail("unexpected character");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
    Parser parser(text);
    auto root = parser.parse();
    return Expression(std::string(text), std::move(root));
}

long double Expression::operator()(long double n) const { return root_->eval(n); }

}  // namespace hardyop
