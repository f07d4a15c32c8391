#include "pdesk/expr.hpp"

#include <cctype>

#include "pdesk/diag.hpp"

namespace pdesk {

bool BoolExpr::eval(const std::vector<bool>& inputs) const {
  switch (op) {
    case Op::Const: return value;
    case Op::Var: return inputs[var];
    case Op::Not: return !lhs->eval(inputs);
    case Op::And: return lhs->eval(inputs) && rhs->eval(inputs);
    case Op::Or: return lhs->eval(inputs) || rhs->eval(inputs);
    case Op::Xor: return lhs->eval(inputs) != rhs->eval(inputs);
  }
  return false;
}

int BoolFunction::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

// Precedence: ! > & > ^ > |. Also accepts liberty's ' postfix negation
// and juxtaposition-free syntax only (explicit operators required).
class FunctionParser {
 public:
  FunctionParser(const std::string& text, BoolFunction& fn) : text_(text), fn_(fn) {}

  std::unique_ptr<BoolExpr> parse() {
    auto e = parse_or();
    skip_ws();
    if (pos_ != text_.size())
      throw Error(ErrorCode::SyntaxError,
                  "function '" + text_ + "': trailing input at offset " + std::to_string(pos_));
    return e;
  }

 private:
  std::unique_ptr<BoolExpr> parse_or() {
    auto lhs = parse_xor();
    while (peek() == '|' || peek() == '+') {
      ++pos_;
      auto node = std::make_unique<BoolExpr>();
      node->op = BoolExpr::Op::Or;
      node->lhs = std::move(lhs);
      node->rhs = parse_xor();
      lhs = std::move(node);
    }
    return lhs;
  }

  std::unique_ptr<BoolExpr> parse_xor() {
    auto lhs = parse_and();
    while (peek() == '^') {
      ++pos_;
      auto node = std::make_unique<BoolExpr>();
      node->op = BoolExpr::Op::Xor;
      node->lhs = std::move(lhs);
      node->rhs = parse_and();
      lhs = std::move(node);
    }
    return lhs;
  }

  std::unique_ptr<BoolExpr> parse_and() {
    auto lhs = parse_unary();
    while (peek() == '&' || peek() == '*') {
      ++pos_;
      auto node = std::make_unique<BoolExpr>();
      node->op = BoolExpr::Op::And;
      node->lhs = std::move(lhs);
      node->rhs = parse_unary();
      lhs = std::move(node);
    }
    return lhs;
  }

  std::unique_ptr<BoolExpr> parse_unary() {
    if (peek() == '!') {
      ++pos_;
      auto node = std::make_unique<BoolExpr>();
      node->op = BoolExpr::Op::Not;
      node->lhs = parse_unary();
      return node;
    }
    return parse_primary();
  }

  std::unique_ptr<BoolExpr> parse_primary() {
    skip_ws();
    std::unique_ptr<BoolExpr> node;
    if (peek() == '(') {
      ++pos_;
      node = parse_or();
      skip_ws();
      if (peek() != ')')
        throw Error(ErrorCode::SyntaxError, "function '" + text_ + "': missing ')'");
      ++pos_;
    } else {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      if (pos_ == start)
        throw Error(ErrorCode::SyntaxError,
                    "function '" + text_ + "': expected operand at offset " + std::to_string(start));
      const std::string name = text_.substr(start, pos_ - start);
      node = std::make_unique<BoolExpr>();
      if (name == "0" || name == "1") {
        node->op = BoolExpr::Op::Const;
        node->value = name == "1";
      } else {
        node->op = BoolExpr::Op::Var;
        int idx = fn_.var_index(name);
        if (idx < 0) {
          idx = static_cast<int>(fn_.vars.size());
          fn_.vars.push_back(name);
        }
        node->var = idx;
      }
    }
    // liberty postfix negation: A'
    skip_ws();
    while (peek() == '\'') {
      ++pos_;
      auto neg = std::make_unique<BoolExpr>();
      neg->op = BoolExpr::Op::Not;
      neg->lhs = std::move(node);
      node = std::move(neg);
      skip_ws();
    }
    return node;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  BoolFunction& fn_;
  std::size_t pos_ = 0;
};

}  // namespace

BoolFunction parse_bool_function(const std::string& text) {
  BoolFunction fn;
  FunctionParser parser(text, fn);
  fn.root = parser.parse();
  return fn;
}

}  // namespace pdesk
