#include "arrc/eval.h"

#include "arrc/diagnostics.h"

namespace arrc {

namespace {

Value eval_in(const ValueEnv& env, const TypedTerm& e, EvalCounters* counters) {
  if (counters) ++counters->steps;
  switch (e.kind) {
    case TypedTerm::Kind::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) throw InternalError("evaluation of unbound variable " + e.name);
      return it->second;
    }
    case TypedTerm::Kind::Const: {
      std::vector<Value> args;
      args.reserve(e.args.size());
      for (const auto& a : e.args) args.push_back(eval_in(env, *a, counters));
      return apply_constant(e.constant, args, e.type);
    }
    case TypedTerm::Kind::Fun: {
      // The closure keeps the term alive through a shared copy of the body.
      TermRef body = e.args[0];
      std::string x = e.name;
      return Value::fun([env, body, x, counters](const Value& arg) {
        ValueEnv inner = env;
        inner.insert_or_assign(x, arg);
        return eval_in(inner, *body, counters);
      });
    }
    case TypedTerm::Kind::For: {
      std::vector<Value> elems;
      elems.reserve(e.bound());
      ValueEnv inner = env;
      for (std::uint64_t i = 0; i < e.bound(); ++i) {
        inner.insert_or_assign(e.name, Value::fin(i, e.bound()));
        elems.push_back(eval_in(inner, *e.args[0], counters));
      }
      return Value::arr(std::move(elems));
    }
    case TypedTerm::Kind::Ite: {
      Value c = eval_in(env, *e.args[0], counters);
      return eval_in(env, *e.args[c.nat() != 0 ? 1 : 2], counters);
    }
    case TypedTerm::Kind::Let: {
      ValueEnv inner = env;
      inner.insert_or_assign(e.name, eval_in(env, *e.args[0], counters));
      return eval_in(inner, *e.args[1], counters);
    }
  }
  throw InternalError("unhandled typed term");
}

}  // namespace

Value eval_term(const ValueEnv& env, const TypedTerm& e, EvalCounters* counters) {
  return eval_in(env, e, counters);
}

}  // namespace arrc
