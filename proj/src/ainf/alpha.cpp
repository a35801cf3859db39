#include "arrc/ainf.h"

namespace arrc::ainf {

namespace {

// Bijection between the names of two programs.
class Bijection {
 public:
  bool bind(const std::string& a, const std::string& b) {
    auto fa = fwd_.find(a);
    auto rb = back_.find(b);
    if (fa != fwd_.end() || rb != back_.end()) {
      return fa != fwd_.end() && rb != back_.end() && fa->second == b && rb->second == a;
    }
    fwd_.emplace(a, b);
    back_.emplace(b, a);
    return true;
  }

  bool same(const std::string& a, const std::string& b) const {
    auto it = fwd_.find(a);
    if (it != fwd_.end()) return it->second == b;
    // Unmapped names are free (parameters) and must coincide.
    return a == b && !back_.count(b);
  }

 private:
  std::map<std::string, std::string> fwd_;
  std::map<std::string, std::string> back_;
};

class Matcher {
 public:
  bool vpar(const VPar& a, const VPar& b) const {
    if (a.kind != b.kind || !(a.type == b.type)) return false;
    return a.is_var() ? vars_.same(a.name, b.name) : idx_.same(a.name, b.name);
  }

  bool entry(const EnvEntry& a, const EnvEntry& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case EnvEntry::Kind::For:
        return a.bound == b.bound && idx_.bind(a.index, b.index);
      case EnvEntry::Kind::Fun:
        return a.param == b.param && idx_.bind(a.index, b.index);
      default:
        return vpar(a.cond, b.cond);
    }
  }

  bool prim(const Prim& a, const Prim& b) {
    if (a.kind != b.kind || !(a.constant == b.constant) || a.bound != b.bound ||
        !(a.param == b.param) || a.operands.size() != b.operands.size()) {
      return false;
    }
    if (a.kind == Prim::Kind::For || a.kind == Prim::Kind::Fun) {
      if (!idx_.bind(a.index, b.index)) return false;
    }
    if (a.kind == Prim::Kind::Idx && !idx_.same(a.index, b.index)) return false;
    for (std::size_t k = 0; k < a.operands.size(); ++k) {
      if (!vpar(a.operands[k], b.operands[k])) return false;
    }
    return true;
  }

  bool binding(const Binding& a, const Binding& b) {
    if (a.env.size() != b.env.size() || !(a.type == b.type)) return false;
    for (std::size_t k = 0; k < a.env.size(); ++k) {
      if (!entry(a.env[k], b.env[k])) return false;
    }
    return prim(a.prim, b.prim) && vars_.bind(a.var, b.var);
  }

 private:
  Bijection vars_;
  Bijection idx_;
};

}  // namespace

bool alpha_equivalent(const Program& a, const Program& b) {
  if (a.params.size() != b.params.size() || a.bindings.size() != b.bindings.size()) return false;
  for (std::size_t k = 0; k < a.params.size(); ++k) {
    if (a.params[k].name != b.params[k].name || !(a.params[k].type == b.params[k].type)) {
      return false;
    }
  }
  Matcher m;
  for (std::size_t k = 0; k < a.bindings.size(); ++k) {
    if (!m.binding(a.bindings[k], b.bindings[k])) return false;
  }
  return m.vpar(a.result, b.result);
}

}  // namespace arrc::ainf
