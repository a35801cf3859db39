#include <fmt/format.h>

#include <bit>

#include "arrc/opt.h"

namespace arrc::opt {

using ainf::Env;
using ainf::Prim;
using ainf::VPar;

namespace {

std::string tag(VPar::Kind k, std::string_view name) {
  return fmt::format("{}:{}", k == VPar::Kind::Var ? 'v' : 'i', name);
}

}  // namespace

void Ren::add(const VPar& from, const VPar& to) { map_.insert_or_assign(tag(from.kind, from.name), (*this)(to)); }

VPar Ren::operator()(const VPar& v) const {
  auto it = map_.find(tag(v.kind, v.name));
  return it == map_.end() ? v : it->second;
}

Env Ren::operator()(const Env& env) const {
  Env out = env;
  for (auto& e : out) {
    if (e.binds_index()) {
      auto it = map_.find(tag(VPar::Kind::Idx, e.index));
      if (it != map_.end()) e.index = it->second.name;
    } else {
      e.cond = (*this)(e.cond);
    }
  }
  return out;
}

Prim Ren::operator()(const Prim& p) const {
  Prim out = p;
  for (auto& v : out.operands) v = (*this)(v);
  if (p.kind != Prim::Kind::Const) {
    auto it = map_.find(tag(VPar::Kind::Idx, p.index));
    if (it != map_.end()) out.index = it->second.name;
  }
  return out;
}

const VPar* Ren::find_var(std::string_view name) const {
  auto it = map_.find(tag(VPar::Kind::Var, name));
  return it == map_.end() ? nullptr : &it->second;
}

std::string NamingTable::key(const Env& env, const Type& t, const Prim& p) {
  std::string prim;
  if (p.kind == Prim::Kind::Const && p.constant.op == Op::FltLit) {
    prim = fmt::format("flt {:016x}", std::bit_cast<std::uint64_t>(p.constant.flt));
  } else {
    prim = ainf::print_prim(p, t);
  }
  return fmt::format("{}|{}|{}", ainf::print_env(env), t.str(), prim);
}

const VPar* NamingTable::lookup(const Env& env, const Type& t, const Prim& p) const {
  auto it = index_.find(key(env, t, p));
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

void NamingTable::record(const Env& env, const Type& t, const Prim& p, VPar var) {
  std::string k = key(env, t, p);
  if (index_.count(k)) return;
  index_.emplace(k, entries_.size());
  entries_.emplace_back(std::move(k), std::move(var));
}

}  // namespace arrc::opt
