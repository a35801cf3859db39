#include "arrc/constant.h"

#include <bit>
#include <cstring>

namespace arrc {

bool operator==(const Constant& a, const Constant& b) {
  if (a.op != b.op) return false;
  if (a.op == Op::NatLit) return a.nat == b.nat;
  if (a.op == Op::FltLit) {
    return std::bit_cast<std::uint64_t>(a.flt) == std::bit_cast<std::uint64_t>(b.flt);
  }
  return true;
}

std::size_t arity(Op op) {
  switch (op) {
    case Op::NatLit:
    case Op::FltLit:
      return 0;
    case Op::Fst:
    case Op::Snd:
    case Op::Sum:
    case Op::Log:
    case Op::Sqrt:
    case Op::Exp:
    case Op::NormCdf:
      return 1;
    case Op::Add:
    case Op::Mul:
    case Op::Sub:
    case Op::Div:
    case Op::App:
    case Op::Get:
    case Op::Pair:
    case Op::Max:
      return 2;
  }
  return 0;
}

std::string_view op_name(Op op) {
  switch (op) {
    case Op::NatLit: return "nat";
    case Op::FltLit: return "flt";
    case Op::Add: return "+";
    case Op::Mul: return "*";
    case Op::Sub: return "-";
    case Op::Div: return "/";
    case Op::App: return "app";
    case Op::Get: return "get";
    case Op::Pair: return "pair";
    case Op::Fst: return "fst";
    case Op::Snd: return "snd";
    case Op::Sum: return "sum";
    case Op::Max: return "max";
    case Op::Log: return "log";
    case Op::Sqrt: return "sqrt";
    case Op::Exp: return "exp";
    case Op::NormCdf: return "normCdf";
  }
  return "?";
}

std::optional<Op> builtin_by_name(std::string_view name) {
  static constexpr std::pair<std::string_view, Op> kBuiltins[] = {
      {"max", Op::Max},   {"log", Op::Log}, {"sqrt", Op::Sqrt},
      {"exp", Op::Exp},   {"normCdf", Op::NormCdf},
      {"fst", Op::Fst},   {"snd", Op::Snd},
  };
  for (const auto& [n, op] : kBuiltins) {
    if (n == name) return op;
  }
  return std::nullopt;
}

bool is_arith(Op op) {
  return op == Op::Add || op == Op::Mul || op == Op::Sub || op == Op::Div;
}

bool is_unary_intrinsic(Op op) {
  return op == Op::Log || op == Op::Sqrt || op == Op::Exp || op == Op::NormCdf;
}

}  // namespace arrc
