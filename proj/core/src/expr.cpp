#include "selfstab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "selfstab/errors.hpp"

namespace selfstab {

class ExprParser {
 public:
  ExprParser(const std::string& text, Expr& out) : text_(text), out_(out) {}

  void run() {
    parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
  }

 private:
  const std::string& text_;
  Expr& out_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  void emit(Expr::Op op, double v = 0.0) { out_.code_.push_back({op, v}); }

  void parse_expr() {
    parse_term();
    for (;;) {
      if (eat('+')) {
        parse_term();
        emit(Expr::Op::kAdd);
      } else if (eat('-')) {
        parse_term();
        emit(Expr::Op::kSub);
      } else {
        return;
      }
    }
  }

  void parse_term() {
    parse_unary();
    for (;;) {
      if (eat('*')) {
        parse_unary();
        emit(Expr::Op::kMul);
      } else if (eat('/')) {
        parse_unary();
        emit(Expr::Op::kDiv);
      } else {
        return;
      }
    }
  }

  void parse_unary() {
    if (eat('-')) {
      parse_unary();
      emit(Expr::Op::kNeg);
      return;
    }
    parse_primary();
  }

  void parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      parse_expr();
      expect(')');
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = text_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(start, &end);
      if (end == start) fail("bad number");
      pos_ += static_cast<std::size_t>(end - start);
      emit(Expr::Op::kPushConst, v);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t begin = pos_;
      while (pos_ < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      std::string name = text_.substr(begin, pos_ - begin);
      for (std::size_t i = 0; i < out_.vars_.size(); ++i) {
        if (name == out_.vars_[i]) {
          emit(Expr::Op::kPushVar, static_cast<double>(i));
          return;
        }
      }
      if (name == "pi") {
        emit(Expr::Op::kPushConst, M_PI);
        return;
      }
      if (name == "pow") {
        expect('(');
        parse_expr();
        expect(',');
        parse_expr();
        expect(')');
        emit(Expr::Op::kPow);
        return;
      }
      Expr::Op op;
      if (name == "cos")
        op = Expr::Op::kCos;
      else if (name == "sin")
        op = Expr::Op::kSin;
      else if (name == "exp")
        op = Expr::Op::kExp;
      else if (name == "abs")
        op = Expr::Op::kAbs;
      else
        fail("unknown identifier '" + name + "'");
      expect('(');
      parse_expr();
      expect(')');
      emit(op);
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

Expr Expr::parse(const std::string& text, std::vector<std::string> vars) {
  Expr e;
  e.text_ = text;
  e.vars_ = std::move(vars);
  ExprParser(text, e).run();
  return e;
}

double Expr::eval(std::span<const double> vars) const {
  if (vars.size() != vars_.size())
    throw DomainError("expression expects " + std::to_string(vars_.size()) +
                      " variable(s), got " + std::to_string(vars.size()));
  double stack[64];
  int top = -1;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::kPushConst:
        stack[++top] = in.value;
        break;
      case Op::kPushVar:
        stack[++top] = vars[static_cast<std::size_t>(in.value)];
        break;
      case Op::kAdd:
        stack[top - 1] += stack[top];
        --top;
        break;
      case Op::kSub:
        stack[top - 1] -= stack[top];
        --top;
        break;
      case Op::kMul:
        stack[top - 1] *= stack[top];
        --top;
        break;
      case Op::kDiv:
        stack[top - 1] /= stack[top];
        --top;
        break;
      case Op::kNeg:
        stack[top] = -stack[top];
        break;
      case Op::kCos:
        stack[top] = std::cos(stack[top]);
        break;
      case Op::kSin:
        stack[top] = std::sin(stack[top]);
        break;
      case Op::kExp:
        stack[top] = std::exp(stack[top]);
        break;
      case Op::kAbs:
        stack[top] = std::fabs(stack[top]);
        break;
      case Op::kPow:
        stack[top - 1] = std::pow(stack[top - 1], stack[top]);
        --top;
        break;
    }
  }
  return stack[0];
}

}  // namespace selfstab
