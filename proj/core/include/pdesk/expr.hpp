#pragma once

#include <memory>
#include <string>
#include <vector>

namespace pdesk {

// Boolean expression tree for liberty `function` strings.
// Grammar: & | ^ !, parentheses, pin names. Precedence ! > & > ^ > |.
struct BoolExpr {
  enum class Op { Var, Not, And, Or, Xor, Const };

  Op op = Op::Const;
  bool value = false;     // Const
  int var = -1;           // Var: index into the variable name table
  std::unique_ptr<BoolExpr> lhs;
  std::unique_ptr<BoolExpr> rhs;

  bool eval(const std::vector<bool>& inputs) const;
};

struct BoolFunction {
  std::vector<std::string> vars;  // referenced pin names, in first-use order
  std::unique_ptr<BoolExpr> root;

  bool valid() const { return root != nullptr; }
  bool eval(const std::vector<bool>& inputs) const { return root->eval(inputs); }
  int var_index(const std::string& name) const;
};

// Throws Error(SyntaxError) on malformed input.
BoolFunction parse_bool_function(const std::string& text);

}  // namespace pdesk
