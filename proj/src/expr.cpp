#include "ppak/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "ppak/error.hpp"
#include "ppak/jet.hpp"

namespace ppak {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("expression constants must be finite");
  if (value < 0.0) return unary(UnaryOp::Negate, constant(-value));
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  return Expr(std::make_shared<const ExprNode>(ExprNode{ConstantNode{value}}));
}

Expr Expr::variable(std::size_t index) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{VariableNode{index}}));
}

Expr Expr::unary(UnaryOp op, Expr operand) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{UnaryNode{op, std::move(operand)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

Expr Expr::power(Expr base, int exponent) {
  return Expr(
      std::make_shared<const ExprNode>(ExprNode{PowerNode{std::move(base), exponent}}));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = a.node().data;
  const auto& y = b.node().data;
  if (x.index() != y.index()) return false;
  return std::visit(
      Overloaded{
          [&](const ConstantNode& n) { return n.value == std::get<ConstantNode>(y).value; },
          [&](const VariableNode& n) { return n.index == std::get<VariableNode>(y).index; },
          [&](const UnaryNode& n) {
            const auto& m = std::get<UnaryNode>(y);
            return n.op == m.op && n.operand == m.operand;
          },
          [&](const BinaryNode& n) {
            const auto& m = std::get<BinaryNode>(y);
            return n.op == m.op && n.lhs == m.lhs && n.rhs == m.rhs;
          },
          [&](const PowerNode& n) {
            const auto& m = std::get<PowerNode>(y);
            return n.exponent == m.exponent && n.base == m.base;
          },
      },
      x);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool has_variable(const Expr& e) {
  return std::visit(Overloaded{
                        [](const ConstantNode&) { return false; },
                        [](const VariableNode&) { return true; },
                        [](const UnaryNode& n) { return has_variable(n.operand); },
                        [](const BinaryNode& n) { return has_variable(n.lhs) || has_variable(n.rhs); },
                        [](const PowerNode& n) { return has_variable(n.base); },
                    },
                    e.node().data);
}

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> coordinates,
         const ParameterMap& parameters)
      : text_(text), coordinates_(coordinates), parameters_(parameters) {}

  Expr parse() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Subtract, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Multiply, lhs, unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Divide, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::unary(UnaryOp::Negate, unary());
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits_start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits_start) fail_at("exponent must be an integer literal", start);
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      fail_at("exponent must be an integer literal", start);
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + digits_start, text_.data() + pos_, value);
    if (ec != std::errc() || value > 1024) fail_at("exponent out of range", start);
    return Expr::power(base, negative ? -value : value);
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected an expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail_at("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(value)) {
      fail_at("malformed number", start);
    }
    return Expr::constant(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    static constexpr std::pair<std::string_view, UnaryOp> functions[] = {
        {"sin", UnaryOp::Sin}, {"cos", UnaryOp::Cos}, {"exp", UnaryOp::Exp}, {"log", UnaryOp::Log}};
    for (const auto& [fname, op] : functions) {
      if (name == fname) {
        if (!accept('(')) fail("expected '(' after " + std::string(fname));
        Expr arg = expression();
        if (!accept(')')) fail("expected ')'");
        return Expr::unary(op, arg);
      }
    }
    for (std::size_t i = 0; i < coordinates_.size(); ++i) {
      if (coordinates_[i] == name) return Expr::variable(i);
    }
    if (const auto it = parameters_.find(name); it != parameters_.end()) {
      return Expr::constant(it->second);
    }
    std::string declared;
    for (const auto& c : coordinates_) declared += (declared.empty() ? "" : ", ") + c;
    fail_at("unknown identifier '" + std::string(name) + "' (declared coordinates: " + declared +
                ")",
            start);
  }

  std::string_view text_;
  std::span<const std::string> coordinates_;
  const ParameterMap& parameters_;
  std::size_t pos_ = 0;
};

// Printing precedence: sums < products < negation < powers < atoms.
int precedence(const Expr& e) {
  return std::visit(Overloaded{
                        [](const ConstantNode&) { return 5; },
                        [](const VariableNode&) { return 5; },
                        [](const UnaryNode& n) { return n.op == UnaryOp::Negate ? 3 : 5; },
                        [](const BinaryNode& n) {
                          return (n.op == BinaryOp::Add || n.op == BinaryOp::Subtract) ? 1 : 2;
                        },
                        [](const PowerNode&) { return 4; },
                    },
                    e.node().data);
}

void print(const Expr& e, std::span<const std::string> names, std::string& out) {
  auto wrapped = [&](const Expr& child, bool parens) {
    if (parens) out += '(';
    print(child, names, out);
    if (parens) out += ')';
  };
  std::visit(Overloaded{
                 [&](const ConstantNode& n) {
                   char buf[64];
                   const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
                   out.append(buf, ptr);
                 },
                 [&](const VariableNode& n) { out += names[n.index]; },
                 [&](const UnaryNode& n) {
                   switch (n.op) {
                     case UnaryOp::Negate:
                       out += '-';
                       wrapped(n.operand, precedence(n.operand) <= 3);
                       return;
                     case UnaryOp::Sin: out += "sin"; break;
                     case UnaryOp::Cos: out += "cos"; break;
                     case UnaryOp::Exp: out += "exp"; break;
                     case UnaryOp::Log: out += "log"; break;
                   }
                   wrapped(n.operand, true);
                 },
                 [&](const BinaryNode& n) {
                   const int p = precedence(e);
                   wrapped(n.lhs, precedence(n.lhs) < p);
                   switch (n.op) {
                     case BinaryOp::Add: out += " + "; break;
                     case BinaryOp::Subtract: out += " - "; break;
                     case BinaryOp::Multiply: out += "*"; break;
                     case BinaryOp::Divide: out += "/"; break;
                   }
                   wrapped(n.rhs, precedence(n.rhs) <= p);
                 },
                 [&](const PowerNode& n) {
                   wrapped(n.base, precedence(n.base) < 5);
                   out += '^';
                   out += std::to_string(n.exponent);
                 },
             },
             e.node().data);
}

struct Affine {
  std::map<std::size_t, double> coefficients;
  double offset = 0.0;
};

std::optional<Affine> affine_form(const Expr& e) {
  return std::visit(
      Overloaded{
          [](const ConstantNode& n) -> std::optional<Affine> { return Affine{{}, n.value}; },
          [](const VariableNode& n) -> std::optional<Affine> { return Affine{{{n.index, 1.0}}, 0.0}; },
          [](const UnaryNode& n) -> std::optional<Affine> {
            if (n.op != UnaryOp::Negate) {
              if (const auto c = constant_value(Expr::unary(n.op, n.operand))) return Affine{{}, *c};
              return std::nullopt;
            }
            auto a = affine_form(n.operand);
            if (!a) return std::nullopt;
            for (auto& [k, v] : a->coefficients) v = -v;
            a->offset = -a->offset;
            return a;
          },
          [](const BinaryNode& n) -> std::optional<Affine> {
            if (n.op == BinaryOp::Add || n.op == BinaryOp::Subtract) {
              auto a = affine_form(n.lhs);
              auto b = affine_form(n.rhs);
              if (!a || !b) return std::nullopt;
              const double sign = n.op == BinaryOp::Add ? 1.0 : -1.0;
              for (const auto& [k, v] : b->coefficients) a->coefficients[k] += sign * v;
              a->offset += sign * b->offset;
              return a;
            }
            const auto lc = constant_value(n.lhs);
            const auto rc = constant_value(n.rhs);
            if (n.op == BinaryOp::Multiply && (lc || rc)) {
              auto a = affine_form(lc ? n.rhs : n.lhs);
              if (!a) return std::nullopt;
              const double s = lc ? *lc : *rc;
              for (auto& [k, v] : a->coefficients) v *= s;
              a->offset *= s;
              return a;
            }
            if (n.op == BinaryOp::Divide && rc && *rc != 0.0) {
              auto a = affine_form(n.lhs);
              if (!a) return std::nullopt;
              for (auto& [k, v] : a->coefficients) v /= *rc;
              a->offset /= *rc;
              return a;
            }
            return std::nullopt;
          },
          [](const PowerNode& n) -> std::optional<Affine> {
            if (n.exponent == 1) return affine_form(n.base);
            if (const auto c = constant_value(n.base)) return Affine{{}, ipow(*c, n.exponent)};
            return std::nullopt;
          },
      },
      e.node().data);
}

bool integer_affine(const Expr& e) {
  const auto a = affine_form(e);
  if (!a) return false;
  for (const auto& [k, v] : a->coefficients) {
    if (std::abs(v - std::round(v)) > 1e-12) return false;
  }
  return true;
}

}  // namespace

Expr parse_expression(std::string_view text, std::span<const std::string> coordinates,
                      const ParameterMap& parameters) {
  for (const auto& c : coordinates) {
    if (parameters.contains(c)) {
      throw InvalidArgument("parameter '" + c + "' shadows a coordinate name");
    }
  }
  return Parser(text, coordinates, parameters).parse();
}

std::string to_string(const Expr& expr, std::span<const std::string> coordinates) {
  std::string out;
  print(expr, coordinates, out);
  return out;
}

double evaluate(const Expr& expr, std::span<const double> point) {
  return std::visit(
      Overloaded{
          [](const ConstantNode& n) { return n.value; },
          [&](const VariableNode& n) { return point[n.index]; },
          [&](const UnaryNode& n) {
            const double x = evaluate(n.operand, point);
            switch (n.op) {
              case UnaryOp::Negate: return -x;
              case UnaryOp::Sin: return std::sin(x);
              case UnaryOp::Cos: return std::cos(x);
              case UnaryOp::Exp: return std::exp(x);
              case UnaryOp::Log:
                if (!(x > 0.0)) throw DomainError("log of nonpositive value");
                return std::log(x);
            }
            return x;
          },
          [&](const BinaryNode& n) {
            const double a = evaluate(n.lhs, point);
            const double b = evaluate(n.rhs, point);
            switch (n.op) {
              case BinaryOp::Add: return a + b;
              case BinaryOp::Subtract: return a - b;
              case BinaryOp::Multiply: return a * b;
              case BinaryOp::Divide:
                if (b == 0.0) throw DomainError("division by zero");
                return a / b;
            }
            return a;
          },
          [&](const PowerNode& n) {
            const double x = evaluate(n.base, point);
            if (n.exponent < 0 && x == 0.0) throw DomainError("zero raised to a negative power");
            return ipow(x, n.exponent);
          },
      },
      expr.node().data);
}

bool references(const Expr& expr, std::size_t coordinate) {
  return std::visit(Overloaded{
                        [](const ConstantNode&) { return false; },
                        [&](const VariableNode& n) { return n.index == coordinate; },
                        [&](const UnaryNode& n) { return references(n.operand, coordinate); },
                        [&](const BinaryNode& n) {
                          return references(n.lhs, coordinate) || references(n.rhs, coordinate);
                        },
                        [&](const PowerNode& n) { return references(n.base, coordinate); },
                    },
                    expr.node().data);
}

std::size_t node_count(const Expr& expr) {
  return std::visit(Overloaded{
                        [](const ConstantNode&) -> std::size_t { return 1; },
                        [](const VariableNode&) -> std::size_t { return 1; },
                        [](const UnaryNode& n) { return 1 + node_count(n.operand); },
                        [](const BinaryNode& n) { return 1 + node_count(n.lhs) + node_count(n.rhs); },
                        [](const PowerNode& n) { return 1 + node_count(n.base); },
                    },
                    expr.node().data);
}

Expr substitute(const Expr& expr, std::size_t coordinate, double value) {
  return std::visit(
      Overloaded{
          [&](const ConstantNode&) { return expr; },
          [&](const VariableNode& n) { return n.index == coordinate ? Expr::constant(value) : expr; },
          [&](const UnaryNode& n) {
            return Expr::unary(n.op, substitute(n.operand, coordinate, value));
          },
          [&](const BinaryNode& n) {
            return Expr::binary(n.op, substitute(n.lhs, coordinate, value),
                                substitute(n.rhs, coordinate, value));
          },
          [&](const PowerNode& n) {
            return Expr::power(substitute(n.base, coordinate, value), n.exponent);
          },
      },
      expr.node().data);
}

std::optional<double> constant_value(const Expr& expr) {
  if (has_variable(expr)) return std::nullopt;
  try {
    return evaluate(expr, {});
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

bool is_structurally_periodic(const Expr& expr) {
  return std::visit(Overloaded{
                        [](const ConstantNode&) { return true; },
                        [](const VariableNode&) { return false; },
                        [](const UnaryNode& n) {
                          if (n.op == UnaryOp::Sin || n.op == UnaryOp::Cos) {
                            return integer_affine(n.operand) ||
                                   is_structurally_periodic(n.operand);
                          }
                          return is_structurally_periodic(n.operand);
                        },
                        [](const BinaryNode& n) {
                          return is_structurally_periodic(n.lhs) &&
                                 is_structurally_periodic(n.rhs);
                        },
                        [](const PowerNode& n) { return is_structurally_periodic(n.base); },
                    },
                    expr.node().data);
}

}  // namespace ppak
