#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lne/geometry.hpp"

namespace lne {

class ParseError : public Error {
public:
    using Error::Error;
};

/// Raised when a user expression evaluates to a non-finite value.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Value together with one directional derivative (forward-mode AD).
struct Dual {
    double v = 0.0;
    double d = 0.0;
};

/// A parsed scalar expression over named variables, e.g. "exp(t)*cos(2*pi*t)".
///
/// Supports + - * / ^, unary minus, numeric literals, the constants pi and e,
/// and sin cos tan exp log sqrt abs sinh cosh tanh asinh atan pow.
class Expression {
public:
    Expression() = default;
    static Expression parse(const std::string& text, std::vector<std::string> variables);

    double eval(std::span<const double> vars) const;
    /// Evaluate with derivative along the seed direction.
    Dual eval(std::span<const Dual> vars) const;

    const std::string& text() const { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace lne
