#include <fmt/format.h>

#include "arrc/syntax.h"

namespace arrc::syntax {

// --- SizeExpr ----------------------------------------------------------------

SizeExpr SizeExpr::literal(std::uint64_t n, SourceLoc loc) {
  SizeExpr e;
  e.kind = Kind::Lit;
  e.lit = n;
  e.loc = loc;
  return e;
}

SizeExpr SizeExpr::variable(std::string name, SourceLoc loc) {
  SizeExpr e;
  e.kind = Kind::Var;
  e.var = std::move(name);
  e.loc = loc;
  return e;
}

SizeExpr SizeExpr::binary(Kind k, SizeExpr l, SizeExpr r, SourceLoc loc) {
  SizeExpr e;
  e.kind = k;
  e.lhs = std::make_shared<const SizeExpr>(std::move(l));
  e.rhs = std::make_shared<const SizeExpr>(std::move(r));
  e.loc = loc;
  return e;
}

std::uint64_t SizeExpr::eval(const SizeEnv& env) const {
  switch (kind) {
    case Kind::Lit:
      return lit;
    case Kind::Var: {
      auto it = env.find(var);
      if (it == env.end()) throw CompileError(loc, fmt::format("unbound size variable {}", var));
      return it->second;
    }
    case Kind::Add:
      return lhs->eval(env) + rhs->eval(env);
    case Kind::Mul:
      return lhs->eval(env) * rhs->eval(env);
    case Kind::Sub: {
      auto a = lhs->eval(env);
      auto b = rhs->eval(env);
      if (b > a) {
        throw CompileError(loc, fmt::format("size {} evaluates below zero ({} - {})", str(), a, b));
      }
      return a - b;
    }
  }
  return 0;
}

void SizeExpr::collect_vars(std::vector<std::string>& out) const {
  if (kind == Kind::Var) out.push_back(var);
  if (lhs) lhs->collect_vars(out);
  if (rhs) rhs->collect_vars(out);
}

std::string SizeExpr::str() const {
  switch (kind) {
    case Kind::Lit:
      return std::to_string(lit);
    case Kind::Var:
      return var;
    case Kind::Add:
      return fmt::format("({}+{})", lhs->str(), rhs->str());
    case Kind::Sub:
      return fmt::format("({}-{})", lhs->str(), rhs->str());
    case Kind::Mul:
      return fmt::format("({}*{})", lhs->str(), rhs->str());
  }
  return "?";
}

bool operator==(const SizeExpr& a, const SizeExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SizeExpr::Kind::Lit:
      return a.lit == b.lit;
    case SizeExpr::Kind::Var:
      return a.var == b.var;
    default:
      return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  }
}

// --- SurfaceType -------------------------------------------------------------

namespace {

std::shared_ptr<const SurfaceType> boxed(SurfaceType t) {
  return std::make_shared<const SurfaceType>(std::move(t));
}

}  // namespace

SurfaceType SurfaceType::flt(SourceLoc loc) {
  SurfaceType t;
  t.kind = Kind::Flt;
  t.loc = loc;
  return t;
}

SurfaceType SurfaceType::fin(SizeExpr n, SourceLoc loc) {
  SurfaceType t;
  t.kind = Kind::Fin;
  t.size = std::move(n);
  t.loc = loc;
  return t;
}

SurfaceType SurfaceType::prod(SurfaceType l, SurfaceType r, SourceLoc loc) {
  SurfaceType t;
  t.kind = Kind::Prod;
  t.a = boxed(std::move(l));
  t.b = boxed(std::move(r));
  t.loc = loc;
  return t;
}

SurfaceType SurfaceType::arrow(SurfaceType l, SurfaceType r, SourceLoc loc) {
  SurfaceType t;
  t.kind = Kind::Arrow;
  t.a = boxed(std::move(l));
  t.b = boxed(std::move(r));
  t.loc = loc;
  return t;
}

SurfaceType SurfaceType::array(SizeExpr n, SurfaceType elem, SourceLoc loc) {
  SurfaceType t;
  t.kind = Kind::Array;
  t.size = std::move(n);
  t.a = boxed(std::move(elem));
  t.loc = loc;
  return t;
}

void SurfaceType::collect_size_vars(std::vector<std::string>& out) const {
  if (size) size->collect_vars(out);
  if (a) a->collect_size_vars(out);
  if (b) b->collect_size_vars(out);
}

std::string SurfaceType::str() const {
  switch (kind) {
    case Kind::Flt:
      return "flt";
    case Kind::Fin:
      return "fin " + size->str();
    case Kind::Prod:
      return fmt::format("({}, {})", a->str(), b->str());
    case Kind::Arrow: {
      bool wrap = a->kind == Kind::Arrow || a->kind == Kind::Array;
      return wrap ? fmt::format("({}) -> {}", a->str(), b->str())
                  : fmt::format("{} -> {}", a->str(), b->str());
    }
    case Kind::Array:
      return fmt::format("{} => {}", size->str(), a->str());
  }
  return "?";
}

bool operator==(const SurfaceType& x, const SurfaceType& y) {
  if (x.kind != y.kind || x.size.has_value() != y.size.has_value()) return false;
  if (x.size && !(*x.size == *y.size)) return false;
  if ((x.a == nullptr) != (y.a == nullptr) || (x.b == nullptr) != (y.b == nullptr)) return false;
  if (x.a && !(*x.a == *y.a)) return false;
  if (x.b && !(*x.b == *y.b)) return false;
  return true;
}

// --- surface expressions -------------------------------------------------------

bool operator==(const Binder& a, const Binder& b) {
  return a.name == b.name && a.bound == b.bound && a.type == b.type;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.op != b.op || a.nat != b.nat ||
      a.proj != b.proj || a.annot != b.annot || a.binders != b.binders ||
      a.kids.size() != b.kids.size()) {
    return false;
  }
  if (a.kind == Expr::Kind::Flt && !(Constant::flt_lit(a.flt) == Constant::flt_lit(b.flt))) {
    return false;
  }
  for (std::size_t k = 0; k < a.kids.size(); ++k) {
    if (!(*a.kids[k] == *b.kids[k])) return false;
  }
  return true;
}

bool operator==(const Param& a, const Param& b) { return a.name == b.name && a.type == b.type; }

bool operator==(const Definition& a, const Definition& b) {
  return a.name == b.name && a.params == b.params && a.ret == b.ret && *a.body == *b.body;
}

bool operator==(const SurfaceProgram& a, const SurfaceProgram& b) {
  if (a.defs.size() != b.defs.size() || a.sizes.size() != b.sizes.size()) return false;
  for (std::size_t k = 0; k < a.sizes.size(); ++k) {
    if (a.sizes[k].name != b.sizes[k].name ||
        a.sizes[k].default_value != b.sizes[k].default_value) {
      return false;
    }
  }
  return a.defs == b.defs;
}

const Definition* SurfaceProgram::find(std::string_view name) const {
  for (const auto& d : defs) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

// --- printing -----------------------------------------------------------------

namespace {

std::string float_text(double f) {
  // Shortest round-trip form, always with a fraction or exponent so it lexes
  // back as a float.
  std::string s = fmt::format("{}", f);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

bool is_atomic(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var:
    case Expr::Kind::Nat:
    case Expr::Kind::Flt:
    case Expr::Kind::Pair:
    case Expr::Kind::Index:
      return true;
    case Expr::Kind::Call:
      return e.kids.size() != 1 || !builtin_by_name(e.name);
    default:
      return false;
  }
}

std::string binders_text(const std::vector<Binder>& bs) {
  std::string out;
  for (std::size_t k = 0; k < bs.size(); ++k) {
    if (k) out += ", ";
    out += bs[k].name;
    if (bs[k].bound) out += ":" + bs[k].bound->str();
    if (bs[k].type) out += ": " + bs[k].type->str();
  }
  return out;
}

std::string operand(const Expr& e) {
  std::string s = print_expr(e);
  return is_atomic(e) ? s : "(" + s + ")";
}

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var:
      return e.name;
    case Expr::Kind::Nat:
      return std::to_string(e.nat);
    case Expr::Kind::Flt:
      return float_text(e.flt);
    case Expr::Kind::Binary:
      return fmt::format("{} {} {}", operand(*e.kids[0]), e.op, operand(*e.kids[1]));
    case Expr::Kind::Call: {
      if (e.kids.size() == 1 && builtin_by_name(e.name)) {
        return fmt::format("{} {}", e.name, operand(*e.kids[0]));
      }
      std::string args;
      for (std::size_t k = 0; k < e.kids.size(); ++k) {
        if (k) args += ", ";
        args += print_expr(*e.kids[k]);
      }
      return fmt::format("{}({})", e.name, args);
    }
    case Expr::Kind::Index: {
      std::string idx;
      for (std::size_t k = 1; k < e.kids.size(); ++k) {
        if (k > 1) idx += ", ";
        idx += print_expr(*e.kids[k]);
      }
      return fmt::format("{}[{}]", operand(*e.kids[0]), idx);
    }
    case Expr::Kind::Proj:
      return fmt::format("{}.{}", operand(*e.kids[0]), e.proj);
    case Expr::Kind::Pair:
      return fmt::format("({}, {})", print_expr(*e.kids[0]), print_expr(*e.kids[1]));
    case Expr::Kind::Let:
      return fmt::format("let {}{} := {}; {}", e.name,
                         e.annot ? " : " + e.annot->str() : std::string(),
                         print_expr(*e.kids[0]), print_expr(*e.kids[1]));
    case Expr::Kind::For:
      return fmt::format("for {}. {}", binders_text(e.binders), print_expr(*e.kids[0]));
    case Expr::Kind::Sum:
      return fmt::format("sum {}. {}", binders_text(e.binders), print_expr(*e.kids[0]));
    case Expr::Kind::Fun:
      return fmt::format("fun {}. {}", binders_text(e.binders), print_expr(*e.kids[0]));
    case Expr::Kind::If:
      return fmt::format("if {} then {} else {}", print_expr(*e.kids[0]),
                         print_expr(*e.kids[1]), print_expr(*e.kids[2]));
  }
  return "?";
}

std::string print_program(const SurfaceProgram& p) {
  std::string out;
  for (const auto& s : p.sizes) {
    out += "size " + s.name;
    if (s.default_value) out += fmt::format(" = {}", *s.default_value);
    out += "\n";
  }
  for (const auto& d : p.defs) {
    std::string params;
    for (std::size_t k = 0; k < d.params.size(); ++k) {
      if (k) params += ", ";
      params += d.params[k].name + ": " + d.params[k].type.str();
    }
    out += fmt::format("{}({}): {} :=\n  {}\n", d.name, params, d.ret.str(), print_expr(*d.body));
  }
  return out;
}

}  // namespace arrc::syntax
