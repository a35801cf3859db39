#include <fmt/format.h>

#include <optional>

#include "arrc/ainf.h"
#include "arrc/diagnostics.h"

namespace arrc::ainf {

namespace {

using Assign = std::map<std::string, Value, std::less<>>;

bool has_fun_entry(const Env& env) {
  return std::any_of(env.begin(), env.end(),
                     [](const EnvEntry& e) { return e.kind == EnvEntry::Kind::Fun; });
}

// Evaluation state. Closures returned for fun primitives keep it alive.
class Machine : public std::enable_shared_from_this<Machine> {
 public:
  Machine(const Program& a, const ValueEnv& params, EvalCounters* counters)
      : program_(a), params_(params), counters_(counters) {}

  void run() {
    for (std::size_t k = 0; k < program_.bindings.size(); ++k) {
      const Binding& b = program_.bindings[k];
      by_name_.emplace(b.var, k);
      Slot& slot = slots_.emplace_back();
      if (has_fun_entry(b.env)) continue;  // evaluated on demand
      for (const auto& e : b.env) {
        if (e.kind == EnvEntry::Kind::For) {
          slot.loops.push_back(e.index);
          slot.bounds.push_back(e.bound);
        }
      }
      std::size_t total = 1;
      for (auto n : slot.bounds) total *= n;
      slot.table.assign(total, std::nullopt);
      std::vector<std::uint64_t> tuple(slot.bounds.size(), 0);
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        Assign assign;
        for (std::size_t d = slot.bounds.size(); d-- > 0;) {
          tuple[d] = rem % slot.bounds[d];
          rem /= slot.bounds[d];
        }
        for (std::size_t d = 0; d < tuple.size(); ++d) {
          assign.emplace(slot.loops[d], Value::fin(tuple[d], slot.bounds[d]));
        }
        if (!conditions_hold(b.env, assign)) continue;
        slot.table[flat] = eval_prim(b, assign);
      }
    }
  }

  Value lookup(const VPar& v, const Assign& assign) {
    if (v.is_idx()) {
      auto it = assign.find(v.name);
      if (it == assign.end()) throw InternalError("index " + v.name + " has no value");
      return it->second;
    }
    auto pit = params_.find(v.name);
    auto bit = by_name_.find(v.name);
    if (bit == by_name_.end()) {
      if (pit != params_.end()) return pit->second;
      throw InternalError("variable " + v.name + " has no value");
    }
    const Binding& b = program_.bindings[bit->second];
    const Slot& slot = slots_[bit->second];
    if (has_fun_entry(b.env)) {
      if (!conditions_hold(b.env, assign)) {
        throw InternalError("read of conditional variable " + v.name + " outside its condition");
      }
      return eval_prim(b, assign);
    }
    std::size_t flat = 0;
    for (std::size_t d = 0; d < slot.loops.size(); ++d) {
      auto it = assign.find(slot.loops[d]);
      if (it == assign.end()) throw InternalError("index " + slot.loops[d] + " has no value");
      flat = flat * slot.bounds[d] + it->second.nat();
    }
    if (flat >= slot.table.size() || !slot.table[flat]) {
      throw InternalError("read of absent slot of " + v.name);
    }
    return *slot.table[flat];
  }

 private:
  struct Slot {
    std::vector<std::string> loops;
    std::vector<std::uint64_t> bounds;
    std::vector<std::optional<Value>> table;
  };

  bool conditions_hold(const Env& env, const Assign& assign) {
    for (const auto& e : env) {
      if (e.kind == EnvEntry::Kind::IfTrue && lookup(e.cond, assign).nat() == 0) return false;
      if (e.kind == EnvEntry::Kind::IfFalse && lookup(e.cond, assign).nat() != 0) return false;
    }
    return true;
  }

  Value eval_prim(const Binding& b, const Assign& assign) {
    if (counters_) ++counters_->per_binding[b.var];
    const Prim& p = b.prim;
    switch (p.kind) {
      case Prim::Kind::Const: {
        std::vector<Value> args;
        args.reserve(p.operands.size());
        for (const auto& v : p.operands) args.push_back(lookup(v, assign));
        return apply_constant(p.constant, args, b.type);
      }
      case Prim::Kind::Idx:
        return lookup(VPar::idx(p.index, b.type), assign);
      case Prim::Kind::For: {
        std::vector<Value> elems;
        elems.reserve(p.bound);
        Assign inner = assign;
        for (std::uint64_t k = 0; k < p.bound; ++k) {
          inner.insert_or_assign(p.index, Value::fin(k, p.bound));
          elems.push_back(lookup(p.operands[0], inner));
        }
        return Value::arr(std::move(elems));
      }
      case Prim::Kind::Fun: {
        auto self = shared_from_this();
        VPar body = p.operands[0];
        std::string i = p.index;
        return Value::fun([self, body, i, assign](const Value& arg) {
          Assign inner = assign;
          inner.insert_or_assign(i, arg);
          return self->lookup(body, inner);
        });
      }
      case Prim::Kind::Ite: {
        Value c = lookup(p.operands[0], assign);
        return lookup(p.operands[c.nat() != 0 ? 1 : 2], assign);
      }
    }
    throw InternalError("unhandled primitive");
  }

  Program program_;
  ValueEnv params_;
  EvalCounters* counters_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  std::vector<Slot> slots_;
};

}  // namespace

Value ainf_eval(const Program& a, const ValueEnv& params, EvalCounters* counters) {
  auto m = std::make_shared<Machine>(a, params, counters);
  m->run();
  return m->lookup(a.result, {});
}

}  // namespace arrc::ainf
