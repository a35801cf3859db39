#include "arrc/typed_term.h"

#include <fmt/format.h>

#include <array>

#include "arrc/diagnostics.h"
#include "arrc/types.h"

namespace arrc {

namespace tt {

namespace {

TermRef make(TypedTerm t) { return std::make_shared<const TypedTerm>(std::move(t)); }

}  // namespace

TermRef var(std::string name, Type type) {
  TypedTerm t;
  t.kind = TypedTerm::Kind::Var;
  t.name = std::move(name);
  t.type = std::move(type);
  return make(std::move(t));
}

TermRef nat(std::uint64_t n, std::uint64_t fin_bound) {
  return constant(Constant::nat_lit(n), {}, Type::fin(fin_bound));
}

TermRef flt(double f) { return constant(Constant::flt_lit(f), {}, Type::flt()); }

TermRef constant(Constant c, std::vector<TermRef> args, Type type) {
  TypedTerm t;
  t.kind = TypedTerm::Kind::Const;
  t.constant = c;
  t.args = std::move(args);
  t.type = std::move(type);
  return make(std::move(t));
}

TermRef fun(std::string x, Type param, TermRef body) {
  TypedTerm t;
  t.kind = TypedTerm::Kind::Fun;
  t.name = std::move(x);
  t.type = Type::arrow(param, body->type);
  t.binder_type = std::move(param);
  t.args = {std::move(body)};
  return make(std::move(t));
}

TermRef loop(std::string i, std::uint64_t n, TermRef body) {
  TypedTerm t;
  t.kind = TypedTerm::Kind::For;
  t.name = std::move(i);
  t.type = Type::array(n, body->type);
  t.binder_type = Type::fin(n);
  t.args = {std::move(body)};
  return make(std::move(t));
}

TermRef ite(TermRef c, TermRef a, TermRef b) {
  TypedTerm t;
  t.kind = TypedTerm::Kind::Ite;
  t.type = a->type;
  t.args = {std::move(c), std::move(a), std::move(b)};
  return make(std::move(t));
}

TermRef let(std::string x, TermRef bound, TermRef body) {
  TypedTerm t;
  t.kind = TypedTerm::Kind::Let;
  t.name = std::move(x);
  t.type = body->type;
  t.binder_type = bound->type;
  t.args = {std::move(bound), std::move(body)};
  return make(std::move(t));
}

namespace {

TermRef by_sig(Op op, std::vector<TermRef> args) {
  std::vector<Type> types;
  for (const auto& a : args) types.push_back(a->type);
  Type result = const_sig(Constant::of(op), types);
  return constant(Constant::of(op), std::move(args), std::move(result));
}

}  // namespace

TermRef app(TermRef f, TermRef a) { return by_sig(Op::App, {std::move(f), std::move(a)}); }
TermRef get(TermRef a, TermRef i) { return by_sig(Op::Get, {std::move(a), std::move(i)}); }
TermRef pair(TermRef a, TermRef b) { return by_sig(Op::Pair, {std::move(a), std::move(b)}); }
TermRef fst(TermRef p) { return by_sig(Op::Fst, {std::move(p)}); }
TermRef snd(TermRef p) { return by_sig(Op::Snd, {std::move(p)}); }
TermRef sum(TermRef a) { return by_sig(Op::Sum, {std::move(a)}); }
TermRef binary(Op op, TermRef a, TermRef b) { return by_sig(op, {std::move(a), std::move(b)}); }
TermRef unary(Op op, TermRef a) { return by_sig(op, {std::move(a)}); }

}  // namespace tt

bool structurally_equal(const TypedTerm& a, const TypedTerm& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || !(a.type == b.type) || a.name != b.name ||
      !(a.constant == b.constant) || !(a.binder_type == b.binder_type) ||
      a.args.size() != b.args.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!structurally_equal(*a.args[k], *b.args[k])) return false;
  }
  return true;
}

namespace {

using Scope = std::vector<std::pair<std::string_view, std::string_view>>;

bool alpha_rec(const TypedTerm& a, const TypedTerm& b, Scope& scope) {
  if (a.kind != b.kind || !(a.type == b.type) || !(a.constant == b.constant) ||
      !(a.binder_type == b.binder_type) || a.args.size() != b.args.size()) {
    return false;
  }
  switch (a.kind) {
    case TypedTerm::Kind::Var: {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        bool hit_a = it->first == a.name;
        bool hit_b = it->second == b.name;
        if (hit_a || hit_b) return hit_a && hit_b;
      }
      return a.name == b.name;
    }
    case TypedTerm::Kind::Fun:
    case TypedTerm::Kind::For: {
      scope.emplace_back(a.name, b.name);
      bool ok = alpha_rec(*a.args[0], *b.args[0], scope);
      scope.pop_back();
      return ok;
    }
    case TypedTerm::Kind::Let: {
      if (!alpha_rec(*a.args[0], *b.args[0], scope)) return false;
      scope.emplace_back(a.name, b.name);
      bool ok = alpha_rec(*a.args[1], *b.args[1], scope);
      scope.pop_back();
      return ok;
    }
    case TypedTerm::Kind::Const:
    case TypedTerm::Kind::Ite:
      for (std::size_t k = 0; k < a.args.size(); ++k) {
        if (!alpha_rec(*a.args[k], *b.args[k], scope)) return false;
      }
      return true;
  }
  return false;
}

std::string flt_text(double f) { return fmt::format("{}", f); }

}  // namespace

bool alpha_equal(const TypedTerm& a, const TypedTerm& b) {
  Scope scope;
  return alpha_rec(a, b, scope);
}

std::size_t term_size(const TypedTerm& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += term_size(*a);
  return n;
}

std::string print_term(const TypedTerm& t) {
  auto arg = [&](std::size_t k) { return print_term(*t.args[k]); };
  switch (t.kind) {
    case TypedTerm::Kind::Var:
      return t.name;
    case TypedTerm::Kind::Const: {
      const Constant& c = t.constant;
      switch (c.op) {
        case Op::NatLit:
          return std::to_string(c.nat);
        case Op::FltLit:
          return flt_text(c.flt);
        case Op::Add:
        case Op::Mul:
        case Op::Sub:
        case Op::Div:
          return fmt::format("({} {} {})", arg(0), op_name(c.op), arg(1));
        case Op::Get:
          return fmt::format("{}[{}]", arg(0), arg(1));
        case Op::App:
          return fmt::format("app {} {}", arg(0), arg(1));
        case Op::Pair:
          return fmt::format("({}, {})", arg(0), arg(1));
        case Op::Fst:
          return fmt::format("{}.1", arg(0));
        case Op::Snd:
          return fmt::format("{}.2", arg(0));
        case Op::Max:
          return fmt::format("max({}, {})", arg(0), arg(1));
        default:
          return fmt::format("{}({})", op_name(c.op), arg(0));
      }
    }
    case TypedTerm::Kind::Fun:
      return fmt::format("(fun {}: {}. {})", t.name, t.binder_type.str(), arg(0));
    case TypedTerm::Kind::For:
      return fmt::format("(for {}:{}. {})", t.name, t.bound(), arg(0));
    case TypedTerm::Kind::Ite:
      return fmt::format("(if {} then {} else {})", arg(0), arg(1), arg(2));
    case TypedTerm::Kind::Let:
      return fmt::format("(let {} := {}; {})", t.name, arg(0), arg(1));
  }
  return "?";
}

}  // namespace arrc
