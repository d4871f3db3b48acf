#include "locpovm/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "locpovm/errors.hpp"

namespace locpovm {

struct Expr::Node {
    enum Kind { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Fn } kind;
    double value = 0.0;
    std::string name;  // variable or function name
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ConfigError("chart expression error at offset " + std::to_string(pos) +
                          ": " + what + " in '" + s + "'");
    }

    NodePtr make(Expr::Node n) { return std::make_shared<Expr::Node>(std::move(n)); }

    NodePtr expr() {
        NodePtr left = term();
        for (;;) {
            if (eat('+'))
                left = make({Expr::Node::Add, 0, "", left, term()});
            else if (eat('-'))
                left = make({Expr::Node::Sub, 0, "", left, term()});
            else
                return left;
        }
    }
    NodePtr term() {
        NodePtr left = unary();
        for (;;) {
            if (eat('*'))
                left = make({Expr::Node::Mul, 0, "", left, unary()});
            else if (eat('/'))
                left = make({Expr::Node::Div, 0, "", left, unary()});
            else
                return left;
        }
    }
    // unary minus binds looser than ^: -x^2 is -(x^2), 2^-3 is 2^(-3)
    NodePtr unary() {
        if (eat('-')) return make({Expr::Node::Neg, 0, "", unary(), nullptr});
        if (eat('+')) return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = primary();
        if (eat('^')) return make({Expr::Node::Pow, 0, "", base, unary()});
        return base;
    }
    NodePtr primary() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        const char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(s.c_str() + pos, &end);
            if (end == s.c_str() + pos) fail("bad number");
            pos = end - s.c_str();
            return make({Expr::Node::Num, v, "", nullptr, nullptr});
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                      s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (eat('(')) {
                static const char* fns[] = {"exp", "sin", "cos", "sinh", "cosh"};
                bool known = false;
                for (const char* f : fns) known = known || name == f;
                if (!known) fail("unknown function '" + name + "'");
                NodePtr arg = expr();
                if (!eat(')')) fail("missing ')'");
                return make({Expr::Node::Fn, 0, std::move(name), arg, nullptr});
            }
            return make({Expr::Node::Var, 0, std::move(name), nullptr, nullptr});
        }
        if (eat('(')) {
            NodePtr inner = expr();
            if (!eat(')')) fail("missing ')'");
            return inner;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

double eval_node(const Expr::Node& n, const std::map<std::string, double>& vars) {
    switch (n.kind) {
        case Expr::Node::Num:
            return n.value;
        case Expr::Node::Var: {
            auto it = vars.find(n.name);
            if (it == vars.end())
                throw ConfigError("unknown variable '" + n.name + "' in chart expression");
            return it->second;
        }
        case Expr::Node::Add:
            return eval_node(*n.a, vars) + eval_node(*n.b, vars);
        case Expr::Node::Sub:
            return eval_node(*n.a, vars) - eval_node(*n.b, vars);
        case Expr::Node::Mul:
            return eval_node(*n.a, vars) * eval_node(*n.b, vars);
        case Expr::Node::Div:
            return eval_node(*n.a, vars) / eval_node(*n.b, vars);
        case Expr::Node::Pow:
            return std::pow(eval_node(*n.a, vars), eval_node(*n.b, vars));
        case Expr::Node::Neg:
            return -eval_node(*n.a, vars);
        case Expr::Node::Fn: {
            const double v = eval_node(*n.a, vars);
            if (n.name == "exp") return std::exp(v);
            if (n.name == "sin") return std::sin(v);
            if (n.name == "cos") return std::cos(v);
            if (n.name == "sinh") return std::sinh(v);
            return std::cosh(v);
        }
    }
    throw std::logic_error("unreachable expression node");
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    Parser p(text);
    Expr e;
    e.text_ = text;
    e.root_ = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

double Expr::eval(const std::map<std::string, double>& vars) const {
    if (!root_) throw std::logic_error("empty expression");
    return eval_node(*root_, vars);
}

}  // namespace locpovm
