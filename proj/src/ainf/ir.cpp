#include "arrc/ainf.h"

namespace arrc::ainf {

bool operator==(const VPar& a, const VPar& b) {
  return a.kind == b.kind && a.name == b.name && a.type == b.type;
}

EnvEntry EnvEntry::loop(std::string i, std::uint64_t n) {
  EnvEntry e;
  e.kind = Kind::For;
  e.index = std::move(i);
  e.bound = n;
  return e;
}

EnvEntry EnvEntry::fun(std::string i, Type t) {
  EnvEntry e;
  e.kind = Kind::Fun;
  e.index = std::move(i);
  e.param = std::move(t);
  return e;
}

EnvEntry EnvEntry::if_true(VPar c) {
  EnvEntry e;
  e.kind = Kind::IfTrue;
  e.cond = std::move(c);
  return e;
}

EnvEntry EnvEntry::if_false(VPar c) {
  EnvEntry e;
  e.kind = Kind::IfFalse;
  e.cond = std::move(c);
  return e;
}

Type EnvEntry::index_type() const { return kind == Kind::For ? Type::fin(bound) : param; }

bool operator==(const EnvEntry& a, const EnvEntry& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case EnvEntry::Kind::For:
      return a.index == b.index && a.bound == b.bound;
    case EnvEntry::Kind::Fun:
      return a.index == b.index && a.param == b.param;
    case EnvEntry::Kind::IfTrue:
    case EnvEntry::Kind::IfFalse:
      return a.cond == b.cond;
  }
  return false;
}

Prim Prim::constant_app(Constant c, std::vector<VPar> args) {
  Prim p;
  p.kind = Kind::Const;
  p.constant = c;
  p.operands = std::move(args);
  return p;
}

Prim Prim::index_ref(std::string i) {
  Prim p;
  p.kind = Kind::Idx;
  p.index = std::move(i);
  return p;
}

Prim Prim::fun(std::string i, Type t, VPar body) {
  Prim p;
  p.kind = Kind::Fun;
  p.index = std::move(i);
  p.param = std::move(t);
  p.operands = {std::move(body)};
  return p;
}

Prim Prim::loop(std::string i, std::uint64_t n, VPar body) {
  Prim p;
  p.kind = Kind::For;
  p.index = std::move(i);
  p.bound = n;
  p.operands = {std::move(body)};
  return p;
}

Prim Prim::ite(VPar c, VPar t, VPar e) {
  Prim p;
  p.kind = Kind::Ite;
  p.operands = {std::move(c), std::move(t), std::move(e)};
  return p;
}

bool operator==(const Prim& a, const Prim& b) {
  return a.kind == b.kind && a.constant == b.constant && a.operands == b.operands &&
         a.index == b.index && a.bound == b.bound && a.param == b.param;
}

}  // namespace arrc::ainf
