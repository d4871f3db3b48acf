#pragma once

#include <map>
#include <memory>
#include <string>

namespace locpovm {

// Closed-form arithmetic expressions for declarative chart definitions.
// Grammar: + - * / ^ (right-assoc), unary minus, parentheses, numbers,
// functions exp/sin/cos/sinh/cosh, free variables resolved at eval time.
class Expr {
  public:
    static Expr parse(const std::string& text);
    double eval(const std::map<std::string, double>& vars) const;
    const std::string& text() const { return text_; }

    struct Node;  // exposed for the parser translation unit only

  private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace locpovm
