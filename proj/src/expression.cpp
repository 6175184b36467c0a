#include "vecwp/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "vecwp/errors.hpp"

namespace vecwp {

struct Expression::Node {
    enum class Kind { constant, variable, negate, add, sub, mul, div, pow, call };
    enum class Func { exp, log, sqrt, abs, sin, cos, min, max, norm };

    Kind kind = Kind::constant;
    Func func = Func::exp;
    double value = 0.0;
    Eigen::Index var = 0;
    std::vector<std::shared_ptr<const Node>> args;

    double eval(const Vector& x) const {
        switch (kind) {
            case Kind::constant: return value;
            case Kind::variable: return x[var];
            case Kind::negate: return -args[0]->eval(x);
            case Kind::add: return args[0]->eval(x) + args[1]->eval(x);
            case Kind::sub: return args[0]->eval(x) - args[1]->eval(x);
            case Kind::mul: return args[0]->eval(x) * args[1]->eval(x);
            case Kind::div: return args[0]->eval(x) / args[1]->eval(x);
            case Kind::pow: {
                const double b = args[0]->eval(x);
                const double e = args[1]->eval(x);
                if (e == 2.0) return b * b;
                return std::pow(b, e);
            }
            case Kind::call: return call(x);
        }
        return 0.0;
    }

    double call(const Vector& x) const {
        switch (func) {
            case Func::exp: return std::exp(args[0]->eval(x));
            case Func::log: return std::log(args[0]->eval(x));
            case Func::sqrt: return std::sqrt(args[0]->eval(x));
            case Func::abs: return std::abs(args[0]->eval(x));
            case Func::sin: return std::sin(args[0]->eval(x));
            case Func::cos: return std::cos(args[0]->eval(x));
            case Func::min: {
                double r = args[0]->eval(x);
                for (std::size_t i = 1; i < args.size(); ++i) r = std::min(r, args[i]->eval(x));
                return r;
            }
            case Func::max: {
                double r = args[0]->eval(x);
                for (std::size_t i = 1; i < args.size(); ++i) r = std::max(r, args[i]->eval(x));
                return r;
            }
            case Func::norm: {
                double s = 0.0;
                for (const auto& a : args) {
                    const double v = a->eval(x);
                    s += v * v;
                }
                return std::sqrt(s);
            }
        }
        return 0.0;
    }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

class Parser {
public:
    Parser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

    NodePtr parse() {
        NodePtr n = expr();
        skip();
        if (pos_ != text_.size()) error("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::parse, "expression \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->args = {std::move(a), std::move(b)};
        return n;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (true) {
            if (accept('+')) lhs = binary(Node::Kind::add, lhs, term());
            else if (accept('-')) lhs = binary(Node::Kind::sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            if (accept('*')) lhs = binary(Node::Kind::mul, lhs, unary());
            else if (accept('/')) lhs = binary(Node::Kind::div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::negate;
            n->args = {unary()};
            return n;
        }
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return binary(Node::Kind::pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= text_.size()) error("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = expr();
            if (!accept(')')) error("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        error("unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc()) error("malformed number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        auto n = std::make_shared<Node>();
        n->value = v;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        const std::string name(text_.substr(start, pos_ - start));

        skip();
        if (pos_ < text_.size() && text_[pos_] == '(') return call(name);

        auto n = std::make_shared<Node>();
        if (name == "pi") {
            n->value = std::numbers::pi;
            return n;
        }
        if (name == "e") {
            n->value = std::numbers::e;
            return n;
        }
        if (name == "x") {
            if (dim_ != 1) error("plain 'x' is only allowed for one-dimensional problems; use x1..x" + std::to_string(dim_));
            n->kind = Node::Kind::variable;
            return n;
        }
        if (name.size() > 1 && name[0] == 'x') {
            std::size_t k = 0;
            auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
            if (ec == std::errc() && ptr == name.data() + name.size() && k >= 1 && k <= dim_) {
                n->kind = Node::Kind::variable;
                n->var = static_cast<Eigen::Index>(k - 1);
                return n;
            }
        }
        error("unknown identifier '" + name + "'");
    }

    NodePtr call(const std::string& name) {
        static const std::pair<const char*, Node::Func> table[] = {
            {"exp", Node::Func::exp}, {"log", Node::Func::log}, {"sqrt", Node::Func::sqrt},
            {"abs", Node::Func::abs}, {"sin", Node::Func::sin}, {"cos", Node::Func::cos},
            {"min", Node::Func::min}, {"max", Node::Func::max}, {"norm", Node::Func::norm},
        };
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::call;
        bool known = false;
        for (const auto& [fname, f] : table) {
            if (name == fname) {
                n->func = f;
                known = true;
            }
        }
        if (!known) error("unknown function '" + name + "'");
        accept('(');
        if (!accept(')')) {
            do n->args.push_back(expr());
            while (accept(','));
            if (!accept(')')) error("expected ')' after arguments");
        }
        const bool variadic = n->func == Node::Func::min || n->func == Node::Func::max || n->func == Node::Func::norm;
        if (n->args.empty() || (!variadic && n->args.size() != 1)) error("wrong number of arguments to '" + name + "'");
        return n;
    }

    std::string_view text_;
    std::size_t dim_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text, std::size_t decision_dim) {
    if (decision_dim == 0) fail(ErrorKind::input, "expression needs a positive decision dimension");
    Parser parser(text, decision_dim);
    return Expression(std::string(text), parser.parse());
}

double Expression::operator()(const Vector& x) const {
    return root_->eval(x);
}

}  // namespace vecwp
