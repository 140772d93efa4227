#pragma once

#include <memory>
#include <string>

#include "hofer/common.hpp"

namespace hofer {

class ExprError : public ConfigError {
public:
    ExprError(const std::string& msg, std::size_t position)
        : ConfigError(msg + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

// Parsed arithmetic expression in the variables theta (alias for the UTF-8
// theta glyph), h and t, with pi, the four operations, unary minus and the
// functions sin, cos, exp, min, max (the last two binary).
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := NUMBER | 'pi' | 'theta' | 'h' | 't'
//           | func '(' expr [',' expr] ')' | '(' expr ')' | '-' factor
class Expression {
public:
    static Expression parse(const std::string& text);

    double eval(double theta, double h, double t) const;
    bool depends_on_time() const;
    const std::string& text() const { return source_; }

    Expression(Expression&&) noexcept;
    Expression& operator=(Expression&&) noexcept;
    Expression(const Expression&);
    Expression& operator=(const Expression&);
    ~Expression();

    struct Node;  // exposed for the evaluator in the implementation file

private:
    explicit Expression(std::shared_ptr<const Node> root, std::string source);
    std::shared_ptr<const Node> root_;
    std::string source_;
};

}  // namespace hofer
