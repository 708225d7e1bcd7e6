#pragma once

#include <span>
#include <string>
#include <vector>

namespace selfstab {

/// Arithmetic expression over named variables, compiled to a small stack
/// program.  Grammar: + - * / unary-minus, pow(x,y), cos, sin, exp, abs,
/// numeric literals, and the constant pi.  Used for user-supplied alpha
/// evaluators in run configs (variable z, or t/z/g for the non-autonomous
/// variant).
class Expr {
 public:
  /// Throws ParseError with position information on malformed input.
  static Expr parse(const std::string& text, std::vector<std::string> vars = {"z"});

  /// Evaluation with one value per declared variable.
  double eval(std::span<const double> vars) const;

  /// Single-variable convenience.
  double operator()(double z) const { return eval({&z, 1}); }

  const std::string& text() const { return text_; }

 private:
  enum class Op : unsigned char {
    kPushConst,
    kPushVar,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kNeg,
    kCos,
    kSin,
    kExp,
    kAbs,
    kPow,
  };

  struct Instr {
    Op op;
    double value = 0.0;  // constant, or variable index for kPushVar
  };

  std::vector<Instr> code_;
  std::vector<std::string> vars_;
  std::string text_;

  friend class ExprParser;
};

}  // namespace selfstab
