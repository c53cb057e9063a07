#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace hardyop {

/// Arithmetic expression in the single variable `n`.
///
/// Grammar: numbers, `n`, `+ - * / ^`, parentheses and the unary functions
/// `exp`, `sqrt`, `factorial` (the latter via the gamma function, so it accepts
/// non-integer arguments). `^` is right-associative and binds tighter than
/// unary minus, so `-n^2` is `-(n^2)`.
class Expression {
public:
    /// Throws InvalidArgument with the offending column on a syntax error.
    static Expression parse(std::string_view text);

    long double operator()(long double n) const;

    const std::string& text() const { return text_; }

    struct Node;

private:
    Expression(std::string text, std::shared_ptr<const Node> root)
        : text_(std::move(text)), root_(std::move(root)) {}

    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace hardyop
