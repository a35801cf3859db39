#include <fmt/format.h>

#include <cmath>

#include "arrc/ainf.h"

namespace arrc::ainf {

namespace {

std::string fixed(double f) {
  if (std::isnan(f)) return "nan";
  if (std::isinf(f)) return f < 0 ? "-inf" : "inf";
  return fmt::format("{:.6f}", f);
}

std::string exact(double f) { return fmt::format("{}", f); }

std::string entry_text(const EnvEntry& e) {
  switch (e.kind) {
    case EnvEntry::Kind::For:
      return fmt::format("for {}:{}", e.index, e.bound);
    case EnvEntry::Kind::Fun:
      return fmt::format("fun {}:{}", e.index, e.param.str());
    case EnvEntry::Kind::IfTrue:
      return fmt::format("if {}!=0", e.cond.name);
    case EnvEntry::Kind::IfFalse:
      return fmt::format("if {}=0", e.cond.name);
  }
  return "?";
}

std::string prim_text(const Prim& p, bool full_precision) {
  auto arg = [&](std::size_t k) -> const std::string& { return p.operands[k].name; };
  switch (p.kind) {
    case Prim::Kind::Idx:
      return p.index;
    case Prim::Kind::For:
      return fmt::format("for {}:{}. {}", p.index, p.bound, arg(0));
    case Prim::Kind::Fun:
      return fmt::format("fun {}:{}. {}", p.index, p.param.str(), arg(0));
    case Prim::Kind::Ite:
      return fmt::format("ite {} {} {}", arg(0), arg(1), arg(2));
    case Prim::Kind::Const:
      break;
  }
  const Constant& c = p.constant;
  switch (c.op) {
    case Op::NatLit:
      return std::to_string(c.nat);
    case Op::FltLit:
      return full_precision ? exact(c.flt) : fixed(c.flt);
    case Op::Add:
    case Op::Mul:
    case Op::Sub:
    case Op::Div:
      return fmt::format("{} {} {}", arg(0), op_name(c.op), arg(1));
    case Op::Get:
      return fmt::format("{}[{}]", arg(0), arg(1));
    case Op::Pair:
      return fmt::format("({}, {})", arg(0), arg(1));
    default: {
      std::string out(op_name(c.op));
      for (const auto& v : p.operands) out += " " + v.name;
      return out;
    }
  }
}

std::string binding_text(const Binding& b, bool full_precision) {
  std::string env;
  for (const auto& e : b.env) env += entry_text(e) + ", ";
  return fmt::format("let {}({} : {} := {})", env, b.var, b.type.str(),
                     prim_text(b.prim, full_precision));
}

}  // namespace

std::string print_env(const Env& env) {
  std::string out;
  for (std::size_t k = 0; k < env.size(); ++k) {
    if (k) out += ", ";
    out += entry_text(env[k]);
  }
  return out;
}

std::string print_prim(const Prim& p, const Type&) { return prim_text(p, false); }

std::string pretty(const Program& a) {
  std::string out;
  for (const auto& p : a.params) out += fmt::format("param {} : {}\n", p.name, p.type.str());
  for (const auto& b : a.bindings) out += binding_text(b, false) + "\n";
  out += a.result.name + "\n";
  return out;
}

std::string dump_records(const Program& a) {
  std::string out;
  for (const auto& b : a.bindings) {
    std::string env;
    for (std::size_t k = 0; k < b.env.size(); ++k) {
      if (k) env += ", ";
      env += entry_text(b.env[k]);
    }
    out += fmt::format("{}\t{}\t{}\t{}\n", env, b.var, b.type.str(), prim_text(b.prim, true));
  }
  return out;
}

Stats stats(const Program& a) {
  Stats s;
  s.bindings = a.bindings.size();
  for (const auto& b : a.bindings) {
    std::size_t k = 0;
    for (const auto& e : b.env) k += e.binds_index() ? 1 : 0;
    ++s.arity[k];
  }
  return s;
}

std::size_t Stats::arity_at_least(std::size_t k) const {
  std::size_t n = 0;
  for (auto it = arity.lower_bound(k); it != arity.end(); ++it) n += it->second;
  return n;
}

}  // namespace arrc::ainf
