#ifndef STEKLOV_EXPRESSION_HPP
#define STEKLOV_EXPRESSION_HPP

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "steklov/error.hpp"

namespace steklov {

/// Arithmetic expression in the variables x and y.
///
/// Grammar: numbers, x, y, the constants pi and e, binary + - * / and ^
/// (right-associative), unary minus, parentheses and the one-argument
/// functions sin cos tan sinh cosh tanh exp ln sqrt abs. Unary minus binds
/// looser than ^ and tighter than * and /, so -x^2 is -(x^2).
class Expression {
public:
  enum class Op { Number, Constant, X, Y, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Fn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt, Abs };

  struct Node {
    Op op;
    double number = 0.0;
    std::string name;  // constant or function name
    Fn fn = Fn::Sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  static Expression parse(std::string_view text) {
    Parser p{text, 0};
    auto root = p.expression(0);
    p.skip_space();
    if (p.pos < text.size()) throw ParseError("unexpected '" + std::string(1, text[p.pos]) + "'", p.pos);
    return Expression(std::string(text), std::move(root));
  }

  double operator()(double x, double y) const { return eval(*root_, x, y); }
  double eval(double x, double y) const { return eval(*root_, x, y); }

  const std::string& source() const noexcept { return source_; }

  /// Fully parenthesized form; numbers use 17 significant digits so that
  /// parsing the output reproduces the same function bit for bit.
  std::string to_string() const { return print(*root_); }

private:
  Expression(std::string source, std::shared_ptr<const Node> root) : source_(std::move(source)), root_(std::move(root)) {}

  static double apply(Fn fn, double v) {
    switch (fn) {
      case Fn::Sin: return std::sin(v);
      case Fn::Cos: return std::cos(v);
      case Fn::Tan: return std::tan(v);
      case Fn::Sinh: return std::sinh(v);
      case Fn::Cosh: return std::cosh(v);
      case Fn::Tanh: return std::tanh(v);
      case Fn::Exp: return std::exp(v);
      case Fn::Ln: return std::log(v);
      case Fn::Sqrt: return std::sqrt(v);
      case Fn::Abs: return std::abs(v);
    }
    return v;
  }

  static double eval(const Node& n, double x, double y) {
    switch (n.op) {
      case Op::Number:
      case Op::Constant: return n.number;
      case Op::X: return x;
      case Op::Y: return y;
      case Op::Neg: return -eval(*n.lhs, x, y);
      case Op::Add: return eval(*n.lhs, x, y) + eval(*n.rhs, x, y);
      case Op::Sub: return eval(*n.lhs, x, y) - eval(*n.rhs, x, y);
      case Op::Mul: return eval(*n.lhs, x, y) * eval(*n.rhs, x, y);
      case Op::Div: return eval(*n.lhs, x, y) / eval(*n.rhs, x, y);
      case Op::Pow: return std::pow(eval(*n.lhs, x, y), eval(*n.rhs, x, y));
      case Op::Call: return apply(n.fn, eval(*n.lhs, x, y));
    }
    return 0.0;
  }

  static std::string print(const Node& n) {
    switch (n.op) {
      case Op::Number: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n.number);
        return buf;
      }
      case Op::Constant: return n.name;
      case Op::X: return "x";
      case Op::Y: return "y";
      case Op::Neg: return "(-" + print(*n.lhs) + ")";
      case Op::Call: return n.name + "(" + print(*n.lhs) + ")";
      default: break;
    }
    const char* sym = n.op == Op::Add ? " + " : n.op == Op::Sub ? " - " : n.op == Op::Mul ? " * " : n.op == Op::Div ? " / " : " ^ ";
    return "(" + print(*n.lhs) + sym + print(*n.rhs) + ")";
  }

  struct Parser {
    std::string_view s;
    std::size_t pos;

    static constexpr int kUnaryPower = 25;

    void skip_space() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    static std::shared_ptr<const Node> make(Op op, std::shared_ptr<const Node> l = nullptr,
                                            std::shared_ptr<const Node> r = nullptr) {
      auto n = std::make_shared<Node>();
      n->op = op;
      n->lhs = std::move(l);
      n->rhs = std::move(r);
      return n;
    }

    // Binding powers (left, right) of binary operators; 0 when c is not one.
    static std::pair<int, int> infix_power(char c) {
      switch (c) {
        case '+':
        case '-': return {10, 11};
        case '*':
        case '/': return {20, 21};
        case '^': return {31, 30};
        default: return {0, 0};
      }
    }

    std::shared_ptr<const Node> expression(int min_power) {
      auto lhs = prefix();
      for (;;) {
        skip_space();
        if (pos >= s.size()) break;
        const char c = s[pos];
        const auto [lp, rp] = infix_power(c);
        if (lp == 0 || lp <= min_power) break;
        ++pos;
        auto rhs = expression(rp - 1);
        const Op op = c == '+' ? Op::Add : c == '-' ? Op::Sub : c == '*' ? Op::Mul : c == '/' ? Op::Div : Op::Pow;
        lhs = make(op, std::move(lhs), std::move(rhs));
      }
      return lhs;
    }

    std::shared_ptr<const Node> prefix() {
      skip_space();
      if (pos >= s.size()) throw ParseError("unexpected end of expression", pos);
      const char c = s[pos];
      if (c == '-') {
        ++pos;
        return make(Op::Neg, expression(kUnaryPower));
      }
      if (c == '+') {
        ++pos;
        return expression(kUnaryPower);
      }
      if (c == '(') {
        const std::size_t open = pos++;
        auto inner = expression(0);
        skip_space();
        if (pos >= s.size() || s[pos] != ')') throw ParseError("unbalanced '(' opened at " + std::to_string(open), pos);
        ++pos;
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
      throw ParseError("unexpected '" + std::string(1, c) + "'", pos);
    }

    std::shared_ptr<const Node> number() {
      const std::size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) ++pos;
      if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        std::size_t q = pos + 1;
        if (q < s.size() && (s[q] == '+' || s[q] == '-')) ++q;
        if (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) {
          pos = q;
          while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
      }
      const std::string text(s.substr(start, pos - start));
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (end != text.c_str() + text.size()) throw ParseError("malformed number '" + text + "'", start);
      auto n = std::make_shared<Node>();
      n->op = Op::Number;
      n->number = v;
      return n;
    }

    static bool lookup_function(std::string_view name, Fn& fn) {
      static constexpr std::pair<std::string_view, Fn> table[] = {
          {"sin", Fn::Sin},   {"cos", Fn::Cos},   {"tan", Fn::Tan}, {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh},
          {"tanh", Fn::Tanh}, {"exp", Fn::Exp},   {"ln", Fn::Ln},   {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs}};
      for (const auto& [n, f] : table) {
        if (n == name) {
          fn = f;
          return true;
        }
      }
      return false;
    }

    std::shared_ptr<const Node> identifier() {
      const std::size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
      const std::string name(s.substr(start, pos - start));
      const std::size_t after_name = pos;
      skip_space();
      const bool call = pos < s.size() && s[pos] == '(';
      Fn fn{};
      if (lookup_function(name, fn)) {
        if (!call) throw ParseError("function '" + name + "' needs a parenthesized argument", after_name);
        ++pos;
        auto arg = expression(0);
        skip_space();
        if (pos < s.size() && s[pos] == ',') throw ParseError("function '" + name + "' takes exactly one argument", pos);
        if (pos >= s.size() || s[pos] != ')') throw ParseError("expected ')' after argument of '" + name + "'", pos);
        ++pos;
        auto n = std::make_shared<Node>();
        n->op = Op::Call;
        n->fn = fn;
        n->name = name;
        n->lhs = std::move(arg);
        return n;
      }
      pos = after_name;
      if (call) throw ParseError("unknown function '" + name + "'", start);
      if (name == "x") return make(Op::X);
      if (name == "y") return make(Op::Y);
      if (name == "pi" || name == "e") {
        auto n = std::make_shared<Node>();
        n->op = Op::Constant;
        n->name = name;
        n->number = name == "pi" ? std::numbers::pi : std::numbers::e;
        return n;
      }
      throw ParseError("unknown identifier '" + name + "'", start);
    }
  };

  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace steklov

#endif  // STEKLOV_EXPRESSION_HPP
