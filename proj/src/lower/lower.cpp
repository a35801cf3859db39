#include "arrc/lower.h"

#include <fmt/format.h>

#include <set>

#include "arrc/diagnostics.h"

namespace arrc::lower {

namespace {

using ainf::Env;
using ainf::EnvEntry;
using ainf::Prim;
using ainf::VPar;

class Lowering {
 public:
  explicit Lowering(const std::vector<ainf::Param>& params) {
    for (const auto& p : params) {
      taken_.insert(p.name);
      scope_.emplace_back(p.name, VPar::var(p.name, p.type));
    }
    out_.params = params;
  }

  ainf::Program finish(const TypedTerm& e) {
    out_.result = lower(e, {});
    return std::move(out_);
  }

 private:
  std::string fresh(const char* prefix, std::uint64_t& counter) {
    std::string name;
    do {
      name = fmt::format("{}{}", prefix, counter++);
    } while (taken_.count(name));
    return name;
  }

  // Smart binding: variables and indices pass through; anything else gets a
  // fresh name.
  VPar bind(const Env& env, const Type& t, Prim p) {
    if (p.kind == Prim::Kind::Idx) return VPar::idx(p.index, t);
    std::string x = fresh("x", vars_);
    out_.bindings.push_back({env, x, t, std::move(p)});
    return VPar::var(x, t);
  }

  const VPar& lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw InternalError("lowering of unbound name " + name);
  }

  template <class F>
  VPar under(std::string name, VPar v, F body) {
    scope_.emplace_back(std::move(name), std::move(v));
    VPar r = body();
    scope_.pop_back();
    return r;
  }

  VPar lower(const TypedTerm& e, const Env& env) {
    switch (e.kind) {
      case TypedTerm::Kind::Var:
        return lookup(e.name);
      case TypedTerm::Kind::Const: {
        std::vector<VPar> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args) args.push_back(lower(*a, env));
        return bind(env, e.type, Prim::constant_app(e.constant, std::move(args)));
      }
      case TypedTerm::Kind::Fun: {
        std::string i = fresh("i", indices_);
        Env inner = env;
        inner.push_back(EnvEntry::fun(i, e.binder_type));
        VPar body = under(e.name, VPar::idx(i, e.binder_type), [&] { return lower(*e.args[0], inner); });
        return bind(env, e.type, Prim::fun(i, e.binder_type, body));
      }
      case TypedTerm::Kind::For: {
        std::string i = fresh("i", indices_);
        Env inner = env;
        inner.push_back(EnvEntry::loop(i, e.bound()));
        VPar body = under(e.name, VPar::idx(i, e.binder_type), [&] { return lower(*e.args[0], inner); });
        return bind(env, e.type, Prim::loop(i, e.bound(), body));
      }
      case TypedTerm::Kind::Ite: {
        VPar c = lower(*e.args[0], env);
        Env then_env = env;
        then_env.push_back(EnvEntry::if_true(c));
        VPar t = lower(*e.args[1], then_env);
        Env else_env = env;
        else_env.push_back(EnvEntry::if_false(c));
        VPar f = lower(*e.args[2], else_env);
        return bind(env, e.type, Prim::ite(c, t, f));
      }
      case TypedTerm::Kind::Let: {
        VPar bound = lower(*e.args[0], env);
        return under(e.name, bound, [&] { return lower(*e.args[1], env); });
      }
    }
    throw InternalError("unhandled term in lowering");
  }

  ainf::Program out_;
  std::vector<std::pair<std::string, VPar>> scope_;
  std::set<std::string, std::less<>> taken_;
  std::uint64_t vars_ = 0;
  std::uint64_t indices_ = 1;
};

}  // namespace

ainf::Program to_ainf(const TypedTerm& e, const std::vector<ainf::Param>& params) {
  return Lowering(params).finish(e);
}

}  // namespace arrc::lower
