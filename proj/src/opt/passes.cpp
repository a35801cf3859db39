#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "arrc/opt.h"

namespace arrc::opt {

using ainf::Binding;
using ainf::Env;
using ainf::EnvEntry;
using ainf::Prim;
using ainf::Program;
using ainf::VPar;

// --- canonical indices ------------------------------------------------------------

namespace {

class Canon {
 public:
  explicit Canon(const Program& a) {
    for (const auto& p : a.params) taken_.insert(p.name);
    for (const auto& b : a.bindings) taken_.insert(b.var);
  }

  std::string name(std::size_t pos, const EnvEntry& e) {
    std::string key = e.kind == EnvEntry::Kind::For
                          ? fmt::format("{}/for {}", pos, e.bound)
                          : fmt::format("{}/fun {}", pos, e.param.str());
    auto it = names_.find(key);
    if (it != names_.end()) return it->second;
    std::string n;
    do {
      n = fmt::format("i{}", ++counter_);
    } while (taken_.count(n));
    names_.emplace(key, n);
    return n;
  }

 private:
  std::set<std::string, std::less<>> taken_;
  std::map<std::string, std::string, std::less<>> names_;
  std::uint64_t counter_ = 0;
};

}  // namespace

Program canon_env(const Program& a) {
  Canon canon(a);
  Program out = a;
  for (auto& b : out.bindings) {
    // Simultaneous renaming: canonical names may coincide with old ones.
    std::map<std::string, std::string, std::less<>> to;
    std::size_t pos = 0;
    for (const auto& e : b.env) {
      if (e.binds_index()) to[e.index] = canon.name(pos++, e);
    }
    if (b.prim.kind == Prim::Kind::For || b.prim.kind == Prim::Kind::Fun) {
      EnvEntry self = b.prim.kind == Prim::Kind::For ? EnvEntry::loop(b.prim.index, b.prim.bound)
                                                     : EnvEntry::fun(b.prim.index, b.prim.param);
      to[self.index] = canon.name(pos, self);
    }
    auto rename = [&](std::string& name) {
      auto it = to.find(name);
      if (it != to.end()) name = it->second;
    };
    for (auto& e : b.env) {
      if (e.binds_index()) {
        rename(e.index);
      } else if (e.cond.is_idx()) {
        rename(e.cond.name);
      }
    }
    if (b.prim.kind != Prim::Kind::Const) rename(b.prim.index);
    for (auto& v : b.prim.operands) {
      if (v.is_idx()) rename(v.name);
    }
  }
  return out;
}

// --- LICM -------------------------------------------------------------------------

namespace {

// Names of indices a binding needs regardless of its own loop entries.
std::set<std::string> needed_indices(const Binding& b,
                                     const std::map<std::string, Env, std::less<>>& envs) {
  std::set<std::string> need;
  auto use = [&](const VPar& v) {
    if (v.is_idx()) {
      need.insert(v.name);
      return;
    }
    auto it = envs.find(v.name);
    if (it == envs.end()) return;
    for (const auto& e : it->second) {
      if (e.binds_index()) need.insert(e.index);
    }
  };
  if (b.prim.kind == Prim::Kind::Idx) need.insert(b.prim.index);
  for (const auto& v : b.prim.operands) use(v);
  for (const auto& e : b.env) {
    if (!e.binds_index()) use(e.cond);
  }
  return need;
}

}  // namespace

Program licm(const Program& a) {
  Program out = a;
  std::map<std::string, Env, std::less<>> envs;
  for (auto& b : out.bindings) {
    std::set<std::string> need = needed_indices(b, envs);
    std::erase_if(b.env, [&](const EnvEntry& e) {
      return e.kind == EnvEntry::Kind::For && !need.count(e.index);
    });
    envs.insert_or_assign(b.var, b.env);
  }
  return out;
}

bool licm_minimal(const Program& a) {
  std::map<std::string, Env, std::less<>> envs;
  for (const auto& b : a.bindings) {
    std::set<std::string> need = needed_indices(b, envs);
    for (const auto& e : b.env) {
      if (e.kind == EnvEntry::Kind::For && !need.count(e.index)) return false;
    }
    envs.insert_or_assign(b.var, b.env);
  }
  return true;
}

// --- CSE --------------------------------------------------------------------------

CseResult cse_with_renaming(const Program& a) {
  CseResult r;
  r.program.params = a.params;
  Ren ren;
  NamingTable table;
  for (const auto& b : a.bindings) {
    Env env = ren(b.env);
    Prim prim = ren(b.prim);
    if (const VPar* hit = table.lookup(env, b.type, prim)) {
      r.renamed.emplace_back(b.var, hit->name);
      ren.add(VPar::var(b.var, b.type), *hit);
      continue;
    }
    VPar self = VPar::var(b.var, b.type);
    table.record(env, b.type, prim, self);
    r.program.bindings.push_back({std::move(env), b.var, b.type, std::move(prim)});
  }
  r.program.result = ren(a.result);
  return r;
}

Program cse(const Program& a) { return cse_with_renaming(a).program; }

bool cse_unique(const Program& a) {
  NamingTable table;
  for (const auto& b : a.bindings) {
    if (table.lookup(b.env, b.type, b.prim)) return false;
    table.record(b.env, b.type, b.prim, VPar::var(b.var, b.type));
  }
  return true;
}

// --- DCE --------------------------------------------------------------------------

Program dce(const Program& a) {
  std::set<std::string, std::less<>> live;
  if (a.result.is_var()) live.insert(a.result.name);
  std::vector<bool> keep(a.bindings.size(), false);
  for (std::size_t k = a.bindings.size(); k-- > 0;) {
    const Binding& b = a.bindings[k];
    if (!live.count(b.var)) continue;
    keep[k] = true;
    for (const auto& v : b.prim.operands) {
      if (v.is_var()) live.insert(v.name);
    }
    for (const auto& e : b.env) {
      if (!e.binds_index() && e.cond.is_var()) live.insert(e.cond.name);
    }
  }
  Program out;
  out.params = a.params;
  out.result = a.result;
  for (std::size_t k = 0; k < a.bindings.size(); ++k) {
    if (keep[k]) out.bindings.push_back(a.bindings[k]);
  }
  return out;
}

}  // namespace arrc::opt
