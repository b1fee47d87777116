#include "ppak/scalar_field.hpp"

#include <cmath>

#include "ppak/error.hpp"

namespace ppak {

ScalarField::ScalarField(Expr expr, std::vector<std::string> coordinates, std::string source)
    : expr_(std::move(expr)), coordinates_(std::move(coordinates)), source_(std::move(source)) {
  if (source_.empty()) source_ = ppak::to_string(expr_, coordinates_);
  compile(expr_);
  std::size_t depth = 0;
  for (const Instruction& ins : program_) {
    switch (ins.op) {
      case OpCode::Constant:
      case OpCode::Variable:
        ++depth;
        break;
      case OpCode::Add:
      case OpCode::Sub:
      case OpCode::Mul:
      case OpCode::Div:
        --depth;
        break;
      default:
        break;
    }
    max_stack_ = std::max(max_stack_, depth);
  }
}

ScalarField ScalarField::parse(std::string_view text, std::vector<std::string> coordinates,
                               const ParameterMap& parameters) {
  Expr e = parse_expression(text, coordinates, parameters);
  return ScalarField(std::move(e), std::move(coordinates), std::string(text));
}

ScalarField ScalarField::constant(double value, std::vector<std::string> coordinates) {
  return ScalarField(Expr::constant(value), std::move(coordinates));
}

std::string ScalarField::to_string() const { return ppak::to_string(expr_, coordinates_); }

void ScalarField::compile(const Expr& e) {
  const auto& data = e.node().data;
  if (const auto* c = std::get_if<ConstantNode>(&data)) {
    program_.push_back({OpCode::Constant, c->value});
  } else if (const auto* v = std::get_if<VariableNode>(&data)) {
    if (v->index >= coordinates_.size()) {
      throw InvalidArgument("expression references coordinate " + std::to_string(v->index) +
                            " outside the declared list");
    }
    program_.push_back({OpCode::Variable, 0.0, v->index});
  } else if (const auto* u = std::get_if<UnaryNode>(&data)) {
    compile(u->operand);
    static constexpr OpCode codes[] = {OpCode::Negate, OpCode::Sin, OpCode::Cos, OpCode::Exp,
                                       OpCode::Log};
    program_.push_back({codes[static_cast<int>(u->op)]});
  } else if (const auto* b = std::get_if<BinaryNode>(&data)) {
    compile(b->lhs);
    compile(b->rhs);
    static constexpr OpCode codes[] = {OpCode::Add, OpCode::Sub, OpCode::Mul, OpCode::Div};
    program_.push_back({codes[static_cast<int>(b->op)]});
  } else {
    const auto& p = std::get<PowerNode>(data);
    compile(p.base);
    program_.push_back({OpCode::Pow, 0.0, 0, p.exponent});
  }
}

void ScalarField::check_point(std::span<const double> point) const {
  if (point.size() != coordinates_.size()) {
    throw InvalidArgument("point has " + std::to_string(point.size()) + " coordinates, field expects " +
                          std::to_string(coordinates_.size()));
  }
}

double ScalarField::eval(std::span<const double> point) const {
  check_point(point);
  return evaluate(expr_, point);
}

template <int Order>
Jet<Order> ScalarField::run(std::span<const double> point) const {
  check_point(point);
  const std::size_t n = coordinates_.size();
  // Per-thread scratch stack; slots keep their storage between calls.
  thread_local std::vector<Jet<Order>> stack;
  if (stack.size() < max_stack_) stack.resize(max_stack_);
  std::size_t top = 0;
  for (const Instruction& ins : program_) {
    switch (ins.op) {
      case OpCode::Constant:
        stack[top++].reset(n, ins.constant);
        break;
      case OpCode::Variable: {
        Jet<Order>& slot = stack[top++];
        slot.reset(n, point[ins.index]);
        slot.d(ins.index) = 1.0;
        break;
      }
      case OpCode::Negate: {
        Jet<Order>& a = stack[top - 1];
        a *= -1.0;
        break;
      }
      case OpCode::Sin: {
        Jet<Order>& a = stack[top - 1];
        const double x = a.value();
        chain_into(a, std::sin(x), std::cos(x), -std::sin(x), a);
        break;
      }
      case OpCode::Cos: {
        Jet<Order>& a = stack[top - 1];
        const double x = a.value();
        chain_into(a, std::cos(x), -std::sin(x), -std::cos(x), a);
        break;
      }
      case OpCode::Exp: {
        Jet<Order>& a = stack[top - 1];
        const double e = std::exp(a.value());
        chain_into(a, e, e, e, a);
        break;
      }
      case OpCode::Log: {
        Jet<Order>& a = stack[top - 1];
        const double x = a.value();
        if (!(x > 0.0)) throw DomainError("log of nonpositive value " + std::to_string(x));
        chain_into(a, std::log(x), 1.0 / x, -1.0 / (x * x), a);
        break;
      }
      case OpCode::Pow: {
        Jet<Order>& a = stack[top - 1];
        const double x = a.value();
        const int k = ins.exponent;
        if (k < 0 && x == 0.0) throw DomainError("zero raised to a negative power");
        const double f1 = k == 0 ? 0.0 : k * ipow(x, k - 1);
        const double f2 = (k == 0 || k == 1) ? 0.0 : double(k) * (k - 1.0) * ipow(x, k - 2);
        chain_into(a, ipow(x, k), f1, f2, a);
        break;
      }
      case OpCode::Add:
        --top;
        add_into(stack[top - 1], stack[top], stack[top - 1]);
        break;
      case OpCode::Sub:
        --top;
        subtract_into(stack[top - 1], stack[top], stack[top - 1]);
        break;
      case OpCode::Mul:
        --top;
        multiply_into(stack[top - 1], stack[top], stack[top - 1]);
        break;
      case OpCode::Div:
        --top;
        divide_into(stack[top - 1], stack[top], stack[top - 1]);
        break;
    }
  }
  return stack[0];
}

Jet1 ScalarField::eval_jet1(std::span<const double> point) const { return run<1>(point); }
Jet2 ScalarField::eval_jet2(std::span<const double> point) const { return run<2>(point); }

}  // namespace ppak
