#pragma once

// Expression trees for wave profiles and metric components.
//
// Grammar (whitespace is insignificant):
//
//   expression := term { ("+" | "-") term }
//   term       := unary { ("*" | "/") unary }
//   unary      := "-" unary | power
//   power      := primary [ "^" [ "+" | "-" ] integer ]
//   primary    := number | identifier | function "(" expression ")" | "(" expression ")"
//   function   := "sin" | "cos" | "exp" | "log"
//   number     := digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//
// Identifiers must name a declared coordinate or a bound parameter;
// parameters are replaced by their numeric value at parse time.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ppak {

enum class UnaryOp { Negate, Sin, Cos, Exp, Log };
enum class BinaryOp { Add, Subtract, Multiply, Divide };

struct ExprNode;

/// Immutable handle to an expression tree. Copies share structure.
class Expr {
 public:
  /// Nonnegative constants are stored as leaves; negative ones as Negate(leaf),
  /// so that printing and reparsing reproduces the same tree.
  static Expr constant(double value);
  static Expr variable(std::size_t index);
  static Expr unary(UnaryOp op, Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr power(Expr base, int exponent);

  const ExprNode& node() const { return *node_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ConstantNode {
  double value;
};
struct VariableNode {
  std::size_t index;
};
struct UnaryNode {
  UnaryOp op;
  Expr operand;
};
struct BinaryNode {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct PowerNode {
  Expr base;
  int exponent;
};

struct ExprNode {
  std::variant<ConstantNode, VariableNode, UnaryNode, BinaryNode, PowerNode> data;
};

using ParameterMap = std::map<std::string, double, std::less<>>;

/// Parses `text` over the given coordinate names. Throws ParseError with the
/// byte offset of the first offending token, including for identifiers that
/// are neither coordinates nor parameters.
Expr parse_expression(std::string_view text, std::span<const std::string> coordinates,
                      const ParameterMap& parameters = {});

/// Prints with the minimum parentheses needed for the output to reparse to a
/// structurally identical tree. Constants use the shortest round-trip form.
std::string to_string(const Expr& expr, std::span<const std::string> coordinates);

/// Plain double evaluation; throws DomainError where the tree is undefined.
double evaluate(const Expr& expr, std::span<const double> point);

bool references(const Expr& expr, std::size_t coordinate);
std::size_t node_count(const Expr& expr);

/// Replaces every occurrence of the coordinate with the constant `value`.
Expr substitute(const Expr& expr, std::size_t coordinate, double value);

/// Value of a variable-free subtree, or nullopt if the subtree references a
/// coordinate.
std::optional<double> constant_value(const Expr& expr);

/// Structural 2π-periodicity: every coordinate occurrence sits inside a sin or
/// cos whose argument is an integer-linear combination of coordinates plus a
/// constant (or is itself periodic).
bool is_structurally_periodic(const Expr& expr);

}  // namespace ppak
