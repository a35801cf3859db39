#include <fmt/format.h>

#include <stdexcept>

#include "arrc/diagnostics.h"
#include "arrc/types.h"

namespace arrc {

using syntax::CoreTerm;
using syntax::SizeExpr;
using syntax::SurfaceType;

// --- Ctx -----------------------------------------------------------------------

Ctx Ctx::extended(std::string name, Type t) const {
  Ctx out = *this;
  out.push(std::move(name), std::move(t));
  return out;
}

void Ctx::push(std::string name, Type t) { entries_.emplace_back(std::move(name), std::move(t)); }

void Ctx::pop() { entries_.pop_back(); }

const Type* Ctx::lookup(std::string_view name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

// --- signatures ------------------------------------------------------------------

namespace {

[[noreturn]] void no_instance(const Constant& c, std::span<const Type> args) {
  std::string list;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k) list += ", ";
    list += args[k].str();
  }
  throw std::invalid_argument(
      fmt::format("'{}' cannot be applied to ({})", op_name(c.op), list));
}

bool both(std::span<const Type> a, Type::Kind k) { return a[0].is(k) && a[1].is(k); }

}  // namespace

Type const_sig(const Constant& c, std::span<const Type> a) {
  if (c.op == Op::NatLit) throw std::invalid_argument("natural literal has no fixed signature");
  if (a.size() != arity(c.op)) {
    throw std::invalid_argument(fmt::format("'{}' expects {} argument(s), got {}", op_name(c.op),
                                            arity(c.op), a.size()));
  }
  switch (c.op) {
    case Op::FltLit:
      return Type::flt();
    case Op::Add:
    case Op::Mul:
      if (both(a, Type::Kind::Flt)) return Type::flt();
      if (both(a, Type::Kind::Fin)) {
        std::uint64_t n = a[0].size();
        std::uint64_t m = a[1].size();
        if (n == 0 || m == 0) return Type::fin(0);
        return Type::fin(c.op == Op::Add ? n + m - 1 : (n - 1) * (m - 1) + 1);
      }
      no_instance(c, a);
    case Op::Sub:
    case Op::Div:
    case Op::Max:
      if (both(a, Type::Kind::Flt)) return Type::flt();
      no_instance(c, a);
    case Op::Log:
    case Op::Sqrt:
    case Op::Exp:
    case Op::NormCdf:
      if (a[0].is(Type::Kind::Flt)) return Type::flt();
      no_instance(c, a);
    case Op::App:
      if (a[0].is(Type::Kind::Arrow) && a[0].param() == a[1]) return a[0].result();
      no_instance(c, a);
    case Op::Get:
      if (a[0].is(Type::Kind::Array) && a[1] == Type::fin(a[0].size())) return a[0].elem();
      no_instance(c, a);
    case Op::Pair:
      return Type::prod(a[0], a[1]);
    case Op::Fst:
      if (a[0].is(Type::Kind::Prod)) return a[0].first();
      no_instance(c, a);
    case Op::Snd:
      if (a[0].is(Type::Kind::Prod)) return a[0].second();
      no_instance(c, a);
    case Op::Sum:
      if (a[0].is(Type::Kind::Array) && a[0].elem().is(Type::Kind::Flt)) return Type::flt();
      no_instance(c, a);
    case Op::NatLit:
      break;
  }
  no_instance(c, a);
}

Type resolve_type(const SurfaceType& t, const syntax::SizeEnv& sizes) {
  switch (t.kind) {
    case SurfaceType::Kind::Flt:
      return Type::flt();
    case SurfaceType::Kind::Fin:
      return Type::fin(t.size->eval(sizes));
    case SurfaceType::Kind::Prod:
      return Type::prod(resolve_type(*t.a, sizes), resolve_type(*t.b, sizes));
    case SurfaceType::Kind::Arrow:
      return Type::arrow(resolve_type(*t.a, sizes), resolve_type(*t.b, sizes));
    case SurfaceType::Kind::Array:
      return Type::array(t.size->eval(sizes), resolve_type(*t.a, sizes));
  }
  throw InternalError("unhandled surface type");
}

SurfaceType to_surface(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Flt:
      return SurfaceType::flt();
    case Type::Kind::Fin:
      return SurfaceType::fin(SizeExpr::literal(t.size()));
    case Type::Kind::Prod:
      return SurfaceType::prod(to_surface(t.first()), to_surface(t.second()));
    case Type::Kind::Arrow:
      return SurfaceType::arrow(to_surface(t.param()), to_surface(t.result()));
    case Type::Kind::Array:
      return SurfaceType::array(SizeExpr::literal(t.size()), to_surface(t.elem()));
  }
  throw InternalError("unhandled type");
}

// --- checker -------------------------------------------------------------------

namespace {

void expect(const CoreTerm& e, const std::optional<Type>& expected, const Type& found) {
  if (expected && !(*expected == found)) {
    throw CompileError(e.loc, fmt::format("type mismatch: expected {}, found {}",
                                          expected->str(), found.str()));
  }
}

// Literals without a fixed type adapt to their context.
bool flexible_literal(const CoreTerm& e) {
  return e.kind == CoreTerm::Kind::Const && e.constant.op == Op::NatLit && !e.literal_type;
}

}  // namespace

Type Checker::resolve(const SurfaceType& t) const { return resolve_type(t, sizes_); }

TermRef Checker::check(const Ctx& ctx, const CoreTerm& e,
                       const std::optional<Type>& expected) const {
  Ctx local = ctx;
  return check_in(local, e, expected);
}

TermRef Checker::check_in(Ctx& ctx, const CoreTerm& e,
                          const std::optional<Type>& expected) const {
  switch (e.kind) {
    case CoreTerm::Kind::Var: {
      const Type* t = ctx.lookup(e.name);
      if (!t) throw CompileError(e.loc, fmt::format("unbound variable {}", e.name));
      expect(e, expected, *t);
      return tt::var(e.name, *t);
    }
    case CoreTerm::Kind::Const:
      return check_const(ctx, e, expected);
    case CoreTerm::Kind::Fun: {
      Type param = resolve(*e.binder_type);
      std::optional<Type> result;
      if (expected) {
        if (!expected->is(Type::Kind::Arrow) || !(expected->param() == param)) {
          throw CompileError(e.loc, fmt::format("type mismatch: expected {}, found a function of {}",
                                                expected->str(), param.str()));
        }
        result = expected->result();
      }
      ctx.push(e.name, param);
      TermRef body = check_in(ctx, *e.args[0], result);
      ctx.pop();
      return tt::fun(e.name, param, std::move(body));
    }
    case CoreTerm::Kind::For: {
      std::optional<std::uint64_t> n;
      if (e.bound) n = e.bound->eval(sizes_);
      std::optional<Type> elem;
      if (expected) {
        if (!expected->is(Type::Kind::Array)) {
          throw CompileError(e.loc, fmt::format("type mismatch: expected {}, found an array",
                                                expected->str()));
        }
        if (n && *n != expected->size()) {
          throw CompileError(e.loc, fmt::format("type mismatch: expected {}, found an array of {}",
                                                expected->str(), *n));
        }
        n = expected->size();
        elem = expected->elem();
      }
      if (!n) {
        throw CompileError(e.loc, fmt::format("cannot infer the bound of index {}", e.name));
      }
      ctx.push(e.name, Type::fin(*n));
      TermRef body = check_in(ctx, *e.args[0], elem);
      ctx.pop();
      return tt::loop(e.name, *n, std::move(body));
    }
    case CoreTerm::Kind::Ite: {
      TermRef c = check_in(ctx, *e.args[0], Type::fin(2));
      TermRef t;
      TermRef f;
      if (expected) {
        t = check_in(ctx, *e.args[1], expected);
        f = check_in(ctx, *e.args[2], expected);
      } else if (flexible_literal(*e.args[1]) && !flexible_literal(*e.args[2])) {
        f = check_in(ctx, *e.args[2], std::nullopt);
        t = check_in(ctx, *e.args[1], f->type);
      } else {
        t = check_in(ctx, *e.args[1], std::nullopt);
        f = check_in(ctx, *e.args[2], t->type);
      }
      return tt::ite(std::move(c), std::move(t), std::move(f));
    }
    case CoreTerm::Kind::Let: {
      std::optional<Type> annot;
      if (e.binder_type) annot = resolve(*e.binder_type);
      TermRef bound = check_in(ctx, *e.args[0], annot);
      ctx.push(e.name, bound->type);
      TermRef body = check_in(ctx, *e.args[1], expected);
      ctx.pop();
      return tt::let(e.name, std::move(bound), std::move(body));
    }
  }
  throw InternalError("unhandled core term");
}

TermRef Checker::literal(const CoreTerm& e, const std::optional<Type>& expected) const {
  std::uint64_t n = e.constant.nat;
  std::optional<Type> target = expected;
  if (e.literal_type) {
    Type fixed = resolve(*e.literal_type);
    expect(e, expected, fixed);
    target = fixed;
  }
  if (!target) return tt::nat(n, n + 1);
  if (target->is(Type::Kind::Flt)) return tt::flt(static_cast<double>(n));
  if (target->is(Type::Kind::Fin)) {
    if (n >= target->size()) {
      throw CompileError(e.loc, fmt::format("literal {} does not fit in {}", n, target->str()));
    }
    return tt::nat(n, target->size());
  }
  throw CompileError(e.loc, fmt::format("type mismatch: expected {}, found literal {}",
                                        target->str(), n));
}

TermRef Checker::check_arith(Ctx& ctx, const CoreTerm& e,
                             const std::optional<Type>& expected) const {
  const Op op = e.constant.op;
  std::vector<TermRef> args(2);
  if (op == Op::Sub || op == Op::Div) {
    for (std::size_t k = 0; k < 2; ++k) args[k] = check_in(ctx, *e.args[k], Type::flt());
  } else {
    bool flt_context = expected && expected->is(Type::Kind::Flt);
    for (std::size_t k = 0; k < 2; ++k) {
      if (flexible_literal(*e.args[k])) continue;
      args[k] = check_in(ctx, *e.args[k], flt_context ? std::optional<Type>(Type::flt())
                                                      : std::nullopt);
      if (args[k]->type.is(Type::Kind::Flt)) flt_context = true;
    }
    for (std::size_t k = 0; k < 2; ++k) {
      if (args[k]) continue;
      args[k] = check_in(ctx, *e.args[k], flt_context ? std::optional<Type>(Type::flt())
                                                      : std::nullopt);
    }
  }
  std::vector<Type> types{args[0]->type, args[1]->type};
  Type result = [&] {
    try {
      return const_sig(e.constant, types);
    } catch (const std::invalid_argument& err) {
      throw CompileError(e.loc, err.what());
    }
  }();
  expect(e, expected, result);
  return tt::constant(e.constant, std::move(args), std::move(result));
}

TermRef Checker::check_const(Ctx& ctx, const CoreTerm& e,
                             const std::optional<Type>& expected) const {
  const Constant& c = e.constant;
  if (e.args.size() != arity(c.op)) {
    throw CompileError(e.loc, fmt::format("'{}' expects {} argument(s), got {}", op_name(c.op),
                                          arity(c.op), e.args.size()));
  }
  std::vector<TermRef> args;
  switch (c.op) {
    case Op::NatLit:
      return literal(e, expected);
    case Op::Add:
    case Op::Mul:
    case Op::Sub:
    case Op::Div:
      return check_arith(ctx, e, expected);
    case Op::FltLit:
      break;
    case Op::Max:
    case Op::Log:
    case Op::Sqrt:
    case Op::Exp:
    case Op::NormCdf:
      for (const auto& a : e.args) args.push_back(check_in(ctx, *a, Type::flt()));
      break;
    case Op::App: {
      TermRef f = check_in(ctx, *e.args[0], std::nullopt);
      if (!f->type.is(Type::Kind::Arrow)) {
        throw CompileError(e.loc, fmt::format("cannot apply a value of type {}", f->type.str()));
      }
      Type param = f->type.param();
      args.push_back(std::move(f));
      args.push_back(check_in(ctx, *e.args[1], param));
      break;
    }
    case Op::Get: {
      TermRef a = check_in(ctx, *e.args[0], std::nullopt);
      if (!a->type.is(Type::Kind::Array)) {
        throw CompileError(e.loc, fmt::format("cannot index a value of type {}", a->type.str()));
      }
      std::uint64_t n = a->type.size();
      args.push_back(std::move(a));
      args.push_back(check_in(ctx, *e.args[1], Type::fin(n)));
      break;
    }
    case Op::Pair:
      if (expected && expected->is(Type::Kind::Prod)) {
        args.push_back(check_in(ctx, *e.args[0], expected->first()));
        args.push_back(check_in(ctx, *e.args[1], expected->second()));
      } else {
        for (const auto& a : e.args) args.push_back(check_in(ctx, *a, std::nullopt));
      }
      break;
    case Op::Fst:
    case Op::Snd:
    case Op::Sum:
      args.push_back(check_in(ctx, *e.args[0], std::nullopt));
      break;
  }
  std::vector<Type> types;
  for (const auto& a : args) types.push_back(a->type);
  Type result = [&] {
    try {
      return const_sig(c, types);
    } catch (const std::invalid_argument& err) {
      throw CompileError(e.loc, err.what());
    }
  }();
  expect(e, expected, result);
  return tt::constant(c, std::move(args), std::move(result));
}

syntax::CoreRef forget(const TypedTerm& t) {
  switch (t.kind) {
    case TypedTerm::Kind::Var:
      return CoreTerm::var(t.name);
    case TypedTerm::Kind::Const: {
      if (t.constant.op == Op::NatLit) {
        auto lit = std::make_shared<CoreTerm>(*CoreTerm::constant_app(t.constant, {}));
        lit->literal_type = to_surface(t.type);
        return lit;
      }
      std::vector<syntax::CoreRef> args;
      for (const auto& a : t.args) args.push_back(forget(*a));
      return CoreTerm::constant_app(t.constant, std::move(args));
    }
    case TypedTerm::Kind::Fun:
      return CoreTerm::fun(t.name, to_surface(t.binder_type), forget(*t.args[0]));
    case TypedTerm::Kind::For:
      return CoreTerm::loop(t.name, SizeExpr::literal(t.bound()), forget(*t.args[0]));
    case TypedTerm::Kind::Ite:
      return CoreTerm::ite(forget(*t.args[0]), forget(*t.args[1]), forget(*t.args[2]));
    case TypedTerm::Kind::Let:
      return CoreTerm::let(t.name, to_surface(t.binder_type), forget(*t.args[0]),
                           forget(*t.args[1]));
  }
  throw InternalError("unhandled typed term");
}

}  // namespace arrc
