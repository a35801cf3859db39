#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace arrc {

enum class Op {
  NatLit,
  FltLit,
  Add,
  Mul,
  Sub,
  Div,
  App,
  Get,
  Pair,
  Fst,
  Snd,
  Sum,
  Max,
  Log,
  Sqrt,
  Exp,
  NormCdf,
};

// A constant of the core language. Literals carry their payload; every other
// constant is identified by its Op alone.
struct Constant {
  Op op = Op::NatLit;
  std::uint64_t nat = 0;
  double flt = 0.0;

  static Constant of(Op op) { return Constant{op, 0, 0.0}; }
  static Constant nat_lit(std::uint64_t n) { return Constant{Op::NatLit, n, 0.0}; }
  static Constant flt_lit(double f) { return Constant{Op::FltLit, 0, f}; }

  bool is_literal() const { return op == Op::NatLit || op == Op::FltLit; }

  // Float literals compare bitwise so that NaN payloads and signed zeros
  // stay distinct.
  friend bool operator==(const Constant& a, const Constant& b);
};

std::size_t arity(Op op);
std::string_view op_name(Op op);

// Builtins callable by name in surface programs (`max`, `sqrt`, `fst`, ...).
std::optional<Op> builtin_by_name(std::string_view name);

bool is_arith(Op op);          // + · − /
bool is_unary_intrinsic(Op op);  // log sqrt exp normCdf

}  // namespace arrc
