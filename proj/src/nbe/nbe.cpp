#include "arrc/nbe.h"

#include <fmt/format.h>

#include "arrc/diagnostics.h"
#include "arrc/value.h"

namespace arrc::nbe {

Den Den::residual(TermRef t) {
  Den d;
  d.term_ = std::move(t);
  return d;
}

Den Den::pair(Den a, Den b) {
  Den d;
  d.pair_ = std::make_shared<const std::pair<Den, Den>>(std::move(a), std::move(b));
  return d;
}

Den Den::fn(DenFn f) {
  Den d;
  d.fn_ = std::make_shared<const DenFn>(std::move(f));
  return d;
}

const TermRef& Den::term() const {
  if (!term_) throw InternalError("denotation is not a residual term");
  return term_;
}

const Den& Den::first() const {
  if (!pair_) throw InternalError("denotation is not a pair");
  return pair_->first;
}

const Den& Den::second() const {
  if (!pair_) throw InternalError("denotation is not a pair");
  return pair_->second;
}

Den Den::operator()(const Den& arg) const {
  if (!fn_) throw InternalError("denotation is not a function");
  return (*fn_)(arg);
}

std::string Normalizer::fresh() { return fmt::format("_{}", ++counter_); }

TermRef Normalizer::quote(const Type& t, const Den& d) {
  switch (t.kind()) {
    case Type::Kind::Fin:
    case Type::Kind::Flt:
      return d.term();
    case Type::Kind::Prod:
      return tt::pair(quote(t.first(), d.first()), quote(t.second(), d.second()));
    case Type::Kind::Arrow: {
      std::string x = fresh();
      Den body = d(splice(t.param(), tt::var(x, t.param())));
      return tt::fun(x, t.param(), quote(t.result(), body));
    }
    case Type::Kind::Array: {
      std::string i = fresh();
      Den body = d(Den::residual(tt::var(i, Type::fin(t.size()))));
      return tt::loop(i, t.size(), quote(t.elem(), body));
    }
  }
  throw InternalError("unhandled type in quote");
}

Den Normalizer::splice(const Type& t, TermRef e) {
  switch (t.kind()) {
    case Type::Kind::Fin:
    case Type::Kind::Flt:
      return Den::residual(std::move(e));
    case Type::Kind::Prod:
      return Den::pair(splice(t.first(), tt::fst(e)), splice(t.second(), tt::snd(e)));
    case Type::Kind::Arrow:
      return Den::fn([this, t, e](const Den& arg) {
        return splice(t.result(), tt::app(e, quote(t.param(), arg)));
      });
    case Type::Kind::Array:
      return Den::fn([this, t, e](const Den& i) { return splice(t.elem(), tt::get(e, i.term())); });
  }
  throw InternalError("unhandled type in splice");
}

namespace {

const Constant* literal_of(const Den& d) {
  if (!d.is_residual()) return nullptr;
  const TypedTerm& t = *d.term();
  if (t.kind == TypedTerm::Kind::Const && t.constant.is_literal()) return &t.constant;
  return nullptr;
}

bool is_flt(const Den& d, double v) {
  const Constant* c = literal_of(d);
  return c && c->op == Op::FltLit && c->flt == v;
}

}  // namespace

Den Normalizer::arith(const TypedTerm& e, const Den& a, const Den& b) {
  const Op op = e.constant.op;
  const Constant* la = literal_of(a);
  const Constant* lb = literal_of(b);
  if (e.type.is(Type::Kind::Fin)) {
    if (la && lb) {
      return Den::residual(tt::nat(apply_fin_binary(op, la->nat, lb->nat), e.type.size()));
    }
  } else {
    if (opts_.fold_floats && la && lb) {
      return Den::residual(tt::flt(apply_float_binary(op, la->flt, lb->flt)));
    }
    if (opts_.identities) {
      switch (op) {
        case Op::Add:
          if (is_flt(a, 0.0)) return b;
          if (is_flt(b, 0.0)) return a;
          break;
        case Op::Mul:
          if (is_flt(a, 1.0)) return b;
          if (is_flt(b, 1.0)) return a;
          break;
        case Op::Sub:
          if (is_flt(b, 0.0)) return a;
          break;
        case Op::Div:
          if (is_flt(b, 1.0)) return a;
          break;
        default:
          break;
      }
    }
  }
  return Den::residual(tt::constant(e.constant, {a.term(), b.term()}, e.type));
}

Den Normalizer::denote_const(const TypedTerm& e, std::vector<Den> args) {
  const Constant& c = e.constant;
  switch (c.op) {
    case Op::NatLit:
    case Op::FltLit:
      return Den::residual(tt::constant(c, {}, e.type));
    case Op::Add:
    case Op::Mul:
    case Op::Sub:
    case Op::Div:
      return arith(e, args[0], args[1]);
    case Op::Max: {
      const Constant* la = literal_of(args[0]);
      const Constant* lb = literal_of(args[1]);
      if (opts_.fold_floats && la && lb) {
        return Den::residual(tt::flt(apply_float_binary(c.op, la->flt, lb->flt)));
      }
      return Den::residual(tt::constant(c, {args[0].term(), args[1].term()}, e.type));
    }
    case Op::Log:
    case Op::Sqrt:
    case Op::Exp:
    case Op::NormCdf: {
      const Constant* la = literal_of(args[0]);
      if (opts_.fold_floats && la) return Den::residual(tt::flt(apply_float_unary(c.op, la->flt)));
      return Den::residual(tt::constant(c, {args[0].term()}, e.type));
    }
    case Op::App:
    case Op::Get:
      return args[0](args[1]);
    case Op::Pair:
      return Den::pair(std::move(args[0]), std::move(args[1]));
    case Op::Fst:
      return args[0].first();
    case Op::Snd:
      return args[0].second();
    case Op::Sum:
      return Den::residual(tt::sum(quote(e.args[0]->type, args[0])));
  }
  throw InternalError("unhandled constant in denote");
}

Den Normalizer::denote(const DenEnv& env, const TypedTerm& e) {
  switch (e.kind) {
    case TypedTerm::Kind::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) throw InternalError("normalization of unbound variable " + e.name);
      return it->second;
    }
    case TypedTerm::Kind::Const: {
      std::vector<Den> args;
      args.reserve(e.args.size());
      for (const auto& a : e.args) args.push_back(denote(env, *a));
      return denote_const(e, std::move(args));
    }
    case TypedTerm::Kind::Fun:
    case TypedTerm::Kind::For: {
      TermRef body = e.args[0];
      std::string x = e.name;
      return Den::fn([this, env, body, x](const Den& arg) {
        DenEnv inner = env;
        inner.insert_or_assign(x, arg);
        return denote(inner, *body);
      });
    }
    case TypedTerm::Kind::Ite: {
      Den c = denote(env, *e.args[0]);
      if (const Constant* lit = literal_of(c)) return denote(env, *e.args[lit->nat != 0 ? 1 : 2]);
      TermRef t = quote(e.type, denote(env, *e.args[1]));
      TermRef f = quote(e.type, denote(env, *e.args[2]));
      return splice(e.type, tt::ite(c.term(), std::move(t), std::move(f)));
    }
    case TypedTerm::Kind::Let: {
      DenEnv inner = env;
      inner.insert_or_assign(e.name, denote(env, *e.args[0]));
      return denote(inner, *e.args[1]);
    }
  }
  throw InternalError("unhandled typed term in denote");
}

TermRef normalize(const TypedTerm& e, const std::vector<Param>& params, Options opts) {
  Normalizer n(opts);
  DenEnv env;
  for (const auto& p : params) env.insert_or_assign(p.name, n.splice(p.type, tt::var(p.name, p.type)));
  return n.quote(e.type, n.denote(env, e));
}

bool is_normal(const TypedTerm& t) {
  if (t.kind == TypedTerm::Kind::Let) return false;
  if (t.kind == TypedTerm::Kind::Const && !t.args.empty()) {
    const TypedTerm& head = *t.args[0];
    switch (t.constant.op) {
      case Op::App:
        if (head.kind == TypedTerm::Kind::Fun) return false;
        break;
      case Op::Get:
        if (head.kind == TypedTerm::Kind::For) return false;
        break;
      case Op::Fst:
      case Op::Snd:
        if (head.kind == TypedTerm::Kind::Const && head.constant.op == Op::Pair) return false;
        break;
      default:
        break;
    }
  }
  for (const auto& a : t.args) {
    if (!is_normal(*a)) return false;
  }
  return true;
}

}  // namespace arrc::nbe
