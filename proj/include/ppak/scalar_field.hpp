#pragma once

#include <span>
#include <string>
#include <vector>

#include "ppak/expr.hpp"
#include "ppak/jet.hpp"

namespace ppak {

/// A parsed expression bound to an ordered coordinate list, compiled to a
/// flat postfix program for evaluation. Immutable; evaluation is safe to call
/// concurrently.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(Expr expr, std::vector<std::string> coordinates, std::string source = {});

  /// Parses `text` over `coordinates`; the original text is kept as the source.
  static ScalarField parse(std::string_view text, std::vector<std::string> coordinates,
                           const ParameterMap& parameters = {});
  static ScalarField constant(double value, std::vector<std::string> coordinates);

  const Expr& expr() const { return expr_; }
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  std::size_t dim() const { return coordinates_.size(); }
  /// The text this field was parsed from, or its canonical printing.
  const std::string& source() const { return source_; }
  std::string to_string() const;

  bool depends_on(std::size_t coordinate) const { return references(expr_, coordinate); }

  double eval(std::span<const double> point) const;
  Jet1 eval_jet1(std::span<const double> point) const;
  /// Value, gradient and Hessian with respect to every chart coordinate.
  Jet2 eval_jet2(std::span<const double> point) const;

 private:
  enum class OpCode { Constant, Variable, Negate, Sin, Cos, Exp, Log, Add, Sub, Mul, Div, Pow };
  struct Instruction {
    OpCode op;
    double constant = 0.0;
    std::size_t index = 0;
    int exponent = 0;
  };

  void compile(const Expr& e);
  template <int Order>
  Jet<Order> run(std::span<const double> point) const;
  void check_point(std::span<const double> point) const;

  Expr expr_ = Expr::constant(0.0);
  std::vector<std::string> coordinates_;
  std::string source_;
  std::vector<Instruction> program_;
  std::size_t max_stack_ = 0;
};

}  // namespace ppak
