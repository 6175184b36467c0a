#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "vecwp/linalg.hpp"

namespace vecwp {

/// Arithmetic expression over the decision vector.
///
/// Grammar: numbers, variables x1..xd (plain `x` when d = 1), constants pi
/// and e, operators + - * / ^ (right associative, binds tighter than unary
/// minus), and functions exp, log, sqrt, abs, sin, cos, min, max and norm
/// (Euclidean norm of its arguments). Parsed once; evaluation is pure.
class Expression {
public:
    struct Node;

    static Expression parse(std::string_view text, std::size_t decision_dim);

    double operator()(const Vector& x) const;
    const std::string& text() const { return text_; }

private:
    Expression(std::string text, std::shared_ptr<const Node> root) : text_(std::move(text)), root_(std::move(root)) {}

    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace vecwp
