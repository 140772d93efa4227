#include "hofer/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace hofer {

namespace {

enum class Op : uint8_t { Const, Theta, H, T, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp, Min, Max };

}  // namespace

struct Expression::Node {
    Op op = Op::Const;
    double value = 0.0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_node(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->value = v;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr run() {
        auto e = expr();
        skip_ws();
        if (pos_ < s_.size()) throw ExprError("unexpected trailing input", pos_);
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        auto lhs = term();
        for (;;) {
            if (consume('+'))
                lhs = make_node(Op::Add, lhs, term());
            else if (consume('-'))
                lhs = make_node(Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        auto lhs = factor();
        for (;;) {
            if (consume('*'))
                lhs = make_node(Op::Mul, lhs, factor());
            else if (consume('/'))
                lhs = make_node(Op::Div, lhs, factor());
            else
                return lhs;
        }
    }

    // Identifier characters: letters plus the two-byte UTF-8 theta glyph.
    std::string read_ident() {
        std::string id;
        while (pos_ < s_.size()) {
            unsigned char c = static_cast<unsigned char>(s_[pos_]);
            if (std::isalpha(c) || c == '_') {
                id.push_back(s_[pos_++]);
            } else if (c == 0xCE && pos_ + 1 < s_.size() &&
                       static_cast<unsigned char>(s_[pos_ + 1]) == 0xB8) {
                id += "theta";
                pos_ += 2;
            } else {
                break;
            }
        }
        return id;
    }

    NodePtr factor() {
        skip_ws();
        if (pos_ >= s_.size()) throw ExprError("unexpected end of expression", pos_);
        char c = s_[pos_];
        if (c == '-') {
            ++pos_;
            return make_node(Op::Neg, factor());
        }
        if (c == '(') {
            ++pos_;
            auto e = expr();
            if (!consume(')')) throw ExprError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) throw ExprError("malformed number", pos_);
            pos_ += static_cast<std::size_t>(end - begin);
            return make_node(Op::Const, nullptr, nullptr, v);
        }
        std::size_t start = pos_;
        std::string id = read_ident();
        if (id.empty()) throw ExprError(std::string("unexpected character '") + c + "'", pos_);
        if (id == "pi") return make_node(Op::Const, nullptr, nullptr, kPi);
        if (id == "theta") return make_node(Op::Theta);
        if (id == "h") return make_node(Op::H);
        if (id == "t") return make_node(Op::T);

        Op fop;
        bool binary = false;
        if (id == "sin")
            fop = Op::Sin;
        else if (id == "cos")
            fop = Op::Cos;
        else if (id == "exp")
            fop = Op::Exp;
        else if (id == "min") {
            fop = Op::Min;
            binary = true;
        } else if (id == "max") {
            fop = Op::Max;
            binary = true;
        } else {
            throw ExprError("unknown identifier '" + id + "'", start);
        }
        if (!consume('(')) throw ExprError("expected '(' after function name", pos_);
        auto a = expr();
        NodePtr b;
        if (binary) {
            if (!consume(',')) throw ExprError("expected ',' between arguments", pos_);
            b = expr();
        }
        if (!consume(')')) throw ExprError("expected ')'", pos_);
        return make_node(fop, a, b);
    }
};

double eval_node(const Expression::Node& n, double theta, double h, double t) {
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Theta: return theta;
        case Op::H: return h;
        case Op::T: return t;
        case Op::Add: return eval_node(*n.a, theta, h, t) + eval_node(*n.b, theta, h, t);
        case Op::Sub: return eval_node(*n.a, theta, h, t) - eval_node(*n.b, theta, h, t);
        case Op::Mul: return eval_node(*n.a, theta, h, t) * eval_node(*n.b, theta, h, t);
        case Op::Div: return eval_node(*n.a, theta, h, t) / eval_node(*n.b, theta, h, t);
        case Op::Neg: return -eval_node(*n.a, theta, h, t);
        case Op::Sin: return std::sin(eval_node(*n.a, theta, h, t));
        case Op::Cos: return std::cos(eval_node(*n.a, theta, h, t));
        case Op::Exp: return std::exp(eval_node(*n.a, theta, h, t));
        case Op::Min:
            return std::min(eval_node(*n.a, theta, h, t), eval_node(*n.b, theta, h, t));
        case Op::Max:
            return std::max(eval_node(*n.a, theta, h, t), eval_node(*n.b, theta, h, t));
    }
    return 0.0;
}

bool node_uses_time(const Expression::Node& n) {
    if (n.op == Op::T) return true;
    if (n.a && node_uses_time(*n.a)) return true;
    if (n.b && node_uses_time(*n.b)) return true;
    return false;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Parser p(text);
    return Expression(p.run(), text);
}

double Expression::eval(double theta, double h, double t) const {
    return eval_node(*root_, theta, h, t);
}

bool Expression::depends_on_time() const { return node_uses_time(*root_); }

Expression::Expression(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;
Expression::Expression(const Expression&) = default;
Expression& Expression::operator=(const Expression&) = default;
Expression::~Expression() = default;

}  // namespace hofer
