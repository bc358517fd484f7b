#include "lne/expression.hpp"

#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <variant>

namespace lne {

enum class Op { Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Abs, Sinh, Cosh, Tanh, Asinh, Atan, Pow };

struct Expression::Node {
    struct Const { double v; };
    struct Var { std::size_t index; };
    struct Apply {
        Op op;
        Fn fn = Fn::Sin;
        std::vector<std::shared_ptr<const Node>> args;
    };
    std::variant<Const, Var, Apply> body;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_const(double v) { return std::make_shared<Expression::Node>(Expression::Node{Expression::Node::Const{v}}); }

NodePtr make_apply(Op op, std::vector<NodePtr> args, Fn fn = Fn::Sin) {
    return std::make_shared<Expression::Node>(Expression::Node{Expression::Node::Apply{op, fn, std::move(args)}});
}

struct FnInfo {
    const char* name;
    Fn fn;
    int arity;
};

constexpr FnInfo kFunctions[] = {
    {"sin", Fn::Sin, 1},   {"cos", Fn::Cos, 1},     {"tan", Fn::Tan, 1},   {"exp", Fn::Exp, 1},
    {"log", Fn::Log, 1},   {"sqrt", Fn::Sqrt, 1},   {"abs", Fn::Abs, 1},   {"sinh", Fn::Sinh, 1},
    {"cosh", Fn::Cosh, 1}, {"tanh", Fn::Tanh, 1},   {"asinh", Fn::Asinh, 1}, {"atan", Fn::Atan, 1},
    {"pow", Fn::Pow, 2},
};

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

    NodePtr parse() {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(fmt::format("{} at column {} in '{}'", what, pos_ + 1, s_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make_apply(Op::Add, {lhs, term()});
            else if (accept('-')) lhs = make_apply(Op::Sub, {lhs, term()});
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make_apply(Op::Mul, {lhs, unary()});
            else if (accept('/')) lhs = make_apply(Op::Div, {lhs, unary()});
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_apply(Op::Neg, {unary()});
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make_apply(Op::Pow, {base, unary()});
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (accept('(')) {
            NodePtr n = expr();
            if (!accept(')')) fail("expected ')'");
            return n;
        }
        fail(fmt::format("unexpected character '{}'", c));
    }

    NodePtr number() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        return make_const(v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string id = s_.substr(start, pos_ - start);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == id) return std::make_shared<Expression::Node>(Expression::Node{Expression::Node::Var{i}});
        }
        if (id == "pi") return make_const(std::numbers::pi);
        if (id == "e") return make_const(std::numbers::e);
        for (const auto& f : kFunctions) {
            if (id != f.name) continue;
            if (!accept('(')) fail("expected '(' after " + id);
            std::vector<NodePtr> args{expr()};
            while (accept(',')) args.push_back(expr());
            if (!accept(')')) fail("expected ')'");
            if (static_cast<int>(args.size()) != f.arity) fail(fmt::format("{} takes {} argument(s)", id, f.arity));
            return make_apply(Op::Call, std::move(args), f.fn);
        }
        pos_ = start;
        fail("unknown identifier '" + id + "'");
    }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

Dual pow_dual(Dual a, Dual b) {
    const double v = std::pow(a.v, b.v);
    double d = 0.0;
    if (a.d != 0.0) {
        // b a^(b-1) a' ; written to stay finite at a = 0 for b >= 1
        d += (b.v == 0.0) ? 0.0 : b.v * std::pow(a.v, b.v - 1.0) * a.d;
    }
    if (b.d != 0.0) d += v * std::log(a.v) * b.d;
    return {v, d};
}

Dual call(Fn fn, std::span<const Dual> x) {
    const Dual a = x[0];
    switch (fn) {
        case Fn::Sin: return {std::sin(a.v), std::cos(a.v) * a.d};
        case Fn::Cos: return {std::cos(a.v), -std::sin(a.v) * a.d};
        case Fn::Tan: {
            const double t = std::tan(a.v);
            return {t, (1.0 + t * t) * a.d};
        }
        case Fn::Exp: {
            const double e = std::exp(a.v);
            return {e, e * a.d};
        }
        case Fn::Log: return {std::log(a.v), a.d / a.v};
        case Fn::Sqrt: {
            const double s = std::sqrt(a.v);
            return {s, a.d == 0.0 ? 0.0 : a.d / (2.0 * s)};
        }
        case Fn::Abs: return {std::abs(a.v), a.v < 0.0 ? -a.d : a.d};
        case Fn::Sinh: return {std::sinh(a.v), std::cosh(a.v) * a.d};
        case Fn::Cosh: return {std::cosh(a.v), std::sinh(a.v) * a.d};
        case Fn::Tanh: {
            const double t = std::tanh(a.v);
            return {t, (1.0 - t * t) * a.d};
        }
        case Fn::Asinh: return {std::asinh(a.v), a.d / std::sqrt(1.0 + a.v * a.v)};
        case Fn::Atan: return {std::atan(a.v), a.d / (1.0 + a.v * a.v)};
        case Fn::Pow: return pow_dual(a, x[1]);
    }
    return {};
}

Dual eval_node(const Expression::Node& n, std::span<const Dual> vars) {
    if (const auto* c = std::get_if<Expression::Node::Const>(&n.body)) return {c->v, 0.0};
    if (const auto* v = std::get_if<Expression::Node::Var>(&n.body)) return vars[v->index];
    const auto& ap = std::get<Expression::Node::Apply>(n.body);
    Dual args[2];
    for (std::size_t i = 0; i < ap.args.size(); ++i) args[i] = eval_node(*ap.args[i], vars);
    const Dual a = args[0], b = args[1];
    switch (ap.op) {
        case Op::Add: return {a.v + b.v, a.d + b.d};
        case Op::Sub: return {a.v - b.v, a.d - b.d};
        case Op::Mul: return {a.v * b.v, a.d * b.v + a.v * b.d};
        case Op::Div: return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
        case Op::Pow: return pow_dual(a, b);
        case Op::Neg: return {-a.v, -a.d};
        case Op::Call: return call(ap.fn, std::span<const Dual>(args, ap.args.size()));
    }
    return {};
}

}  // namespace

Expression Expression::parse(const std::string& text, std::vector<std::string> variables) {
    Expression e;
    e.text_ = text;
    e.root_ = Parser(text, variables).parse();
    return e;
}

Dual Expression::eval(std::span<const Dual> vars) const {
    if (!root_) throw EvalError("empty expression");
    const Dual r = eval_node(*root_, vars);
    if (!std::isfinite(r.v) || !std::isfinite(r.d)) {
        throw EvalError(fmt::format("expression '{}' is not finite at the requested point", text_));
    }
    return r;
}

double Expression::eval(std::span<const double> vars) const {
    std::vector<Dual> d(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) d[i] = {vars[i], 0.0};
    return eval(std::span<const Dual>(d)).v;
}

}  // namespace lne
