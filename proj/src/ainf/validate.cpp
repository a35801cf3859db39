#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "arrc/ainf.h"
#include "arrc/types.h"

namespace arrc::ainf {

namespace {

// Greedy order-preserving match of `sub` inside `env`.
bool subsequence(const Env& sub, const Env& env) {
  std::size_t k = 0;
  for (const auto& e : env) {
    if (k < sub.size() && sub[k] == e) ++k;
  }
  return k == sub.size();
}

Env without_cond(const Env& env, EnvEntry::Kind kind, const VPar& c) {
  Env out;
  for (const auto& e : env) {
    if (e.kind == kind && e.cond == c) continue;
    out.push_back(e);
  }
  return out;
}

class Validator {
 public:
  explicit Validator(const Program& a) : a_(a) {}

  std::vector<Diagnostic> run() {
    for (const auto& p : a_.params) {
      if (!vars_.emplace(p.name, Def{p.type, {}}).second) {
        report(0, fmt::format("duplicate parameter {}", p.name));
      }
    }
    for (std::size_t k = 0; k < a_.bindings.size(); ++k) {
      at_ = k;
      binding(a_.bindings[k]);
    }
    at_ = a_.bindings.size();
    operand(a_.result, {});
    return std::move(diags_);
  }

 private:
  struct Def {
    Type type;
    Env env;
  };

  void report(std::size_t at, std::string msg) { diags_.push_back({at, std::move(msg)}); }
  void report(std::string msg) { report(at_, std::move(msg)); }

  // Index names are program-wide: every declaration of a name must agree.
  void declare_index(const std::string& i, const Type& t) {
    auto [it, fresh] = indices_.emplace(i, t);
    if (!fresh && !(it->second == t)) {
      report(fmt::format("index {} declared as {} and as {}", i, it->second.str(), t.str()));
    }
    if (vars_.count(i)) report(fmt::format("index {} clashes with a variable", i));
  }

  // Resolves `v` at use-site Env `env`; optionally drops one if-entry from the
  // binder Env first (the ite rule).
  void operand(const VPar& v, const Env& env, const EnvEntry* dropped = nullptr) {
    if (v.is_idx()) {
      auto it = std::find_if(env.begin(), env.end(), [&](const EnvEntry& e) {
        return e.binds_index() && e.index == v.name;
      });
      if (it == env.end()) {
        report(fmt::format("index {} is not in scope", v.name));
      } else if (!(it->index_type() == v.type)) {
        report(fmt::format("index {} has type {}, used at {}", v.name, it->index_type().str(),
                           v.type.str()));
      }
      return;
    }
    auto it = vars_.find(v.name);
    if (it == vars_.end()) {
      report(fmt::format("variable {} is used before its definition", v.name));
      return;
    }
    if (!(it->second.type == v.type)) {
      report(fmt::format("variable {} has type {}, used at {}", v.name, it->second.type.str(),
                         v.type.str()));
    }
    Env binder = dropped ? without_cond(it->second.env, dropped->kind, dropped->cond)
                         : it->second.env;
    if (!subsequence(binder, env)) {
      report(fmt::format("variable {} bound under [{}] is out of scope under [{}]", v.name,
                         print_env(it->second.env), print_env(env)));
    }
  }

  void check_env(const Env& env) {
    std::set<std::string> seen;
    for (std::size_t k = 0; k < env.size(); ++k) {
      const EnvEntry& e = env[k];
      if (e.binds_index()) {
        if (!seen.insert(e.index).second) {
          report(fmt::format("index {} appears twice in one environment", e.index));
        }
        declare_index(e.index, e.index_type());
      } else {
        if (!(e.cond.type == Type::fin(2))) {
          report(fmt::format("condition {} has type {}, expected fin 2", e.cond.name,
                             e.cond.type.str()));
        }
        operand(e.cond, Env(env.begin(), env.begin() + static_cast<std::ptrdiff_t>(k)));
      }
    }
  }

  void expect_type(const Type& want, const Type& got) {
    if (!(want == got)) {
      report(fmt::format("primitive has type {}, bound at {}", got.str(), want.str()));
    }
  }

  void binding(const Binding& b) {
    check_env(b.env);
    const Prim& p = b.prim;
    switch (p.kind) {
      case Prim::Kind::Const: {
        for (const auto& v : p.operands) operand(v, b.env);
        if (p.constant.op == Op::NatLit) {
          if (!p.operands.empty() || !b.type.is(Type::Kind::Fin) || p.constant.nat >= b.type.size()) {
            report(fmt::format("literal {} does not fit {}", p.constant.nat, b.type.str()));
          }
          break;
        }
        std::vector<Type> types;
        for (const auto& v : p.operands) types.push_back(v.type);
        try {
          expect_type(b.type, const_sig(p.constant, types));
        } catch (const std::invalid_argument& e) {
          report(e.what());
        }
        break;
      }
      case Prim::Kind::Idx: {
        auto it = std::find_if(b.env.begin(), b.env.end(), [&](const EnvEntry& e) {
          return e.binds_index() && e.index == p.index;
        });
        if (it == b.env.end()) {
          report(fmt::format("index {} is not in scope", p.index));
        } else {
          expect_type(b.type, it->index_type());
        }
        break;
      }
      case Prim::Kind::For:
      case Prim::Kind::Fun: {
        for (const auto& e : b.env) {
          if (e.binds_index() && e.index == p.index) {
            report(fmt::format("index {} is already bound", p.index));
          }
        }
        EnvEntry entry = p.kind == Prim::Kind::For ? EnvEntry::loop(p.index, p.bound)
                                                   : EnvEntry::fun(p.index, p.param);
        declare_index(p.index, entry.index_type());
        Env inner = b.env;
        inner.push_back(entry);
        operand(p.operands[0], inner);
        expect_type(b.type, p.kind == Prim::Kind::For
                                ? Type::array(p.bound, p.operands[0].type)
                                : Type::arrow(p.param, p.operands[0].type));
        break;
      }
      case Prim::Kind::Ite: {
        const VPar& c = p.operands[0];
        operand(c, b.env);
        if (!(c.type == Type::fin(2))) {
          report(fmt::format("condition {} has type {}, expected fin 2", c.name, c.type.str()));
        }
        EnvEntry t = EnvEntry::if_true(c);
        EnvEntry f = EnvEntry::if_false(c);
        operand(p.operands[1], b.env, &t);
        operand(p.operands[2], b.env, &f);
        expect_type(b.type, p.operands[1].type);
        expect_type(b.type, p.operands[2].type);
        break;
      }
    }
    if (indices_.count(b.var)) report(fmt::format("variable {} clashes with an index", b.var));
    if (!vars_.emplace(b.var, Def{b.type, b.env}).second) {
      report(fmt::format("variable {} is bound twice", b.var));
    }
  }

  const Program& a_;
  std::map<std::string, Def, std::less<>> vars_;
  std::map<std::string, Type, std::less<>> indices_;
  std::vector<Diagnostic> diags_;
  std::size_t at_ = 0;
};

}  // namespace

std::vector<Diagnostic> validate(const Program& a) { return Validator(a).run(); }

bool maximally_fissioned(const Program& a) {
  std::set<std::string, std::less<>> known;
  for (const auto& p : a.params) known.insert(p.name);
  std::set<std::string, std::less<>> indices;
  for (const auto& b : a.bindings) {
    for (const auto& e : b.env) {
      if (e.binds_index()) indices.insert(e.index);
    }
    if (b.prim.kind == Prim::Kind::For || b.prim.kind == Prim::Kind::Fun) {
      indices.insert(b.prim.index);
      if (b.prim.operands.size() != 1) return false;
    }
    for (const auto& v : b.prim.operands) {
      if (v.is_var() ? !known.count(v.name) : !indices.count(v.name)) return false;
    }
    known.insert(b.var);
  }
  return a.result.is_var() ? known.count(a.result.name) > 0 : false;
}

}  // namespace arrc::ainf
