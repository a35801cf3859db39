#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "arrc/syntax.h"

namespace arrc::syntax {

// --- CoreTerm ----------------------------------------------------------------

namespace {

CoreRef make(CoreTerm t) { return std::make_shared<const CoreTerm>(std::move(t)); }

}  // namespace

CoreRef CoreTerm::var(std::string name, SourceLoc loc) {
  CoreTerm t;
  t.kind = Kind::Var;
  t.name = std::move(name);
  t.loc = loc;
  return make(std::move(t));
}

CoreRef CoreTerm::constant_app(Constant c, std::vector<CoreRef> args, SourceLoc loc) {
  CoreTerm t;
  t.kind = Kind::Const;
  t.constant = c;
  t.args = std::move(args);
  t.loc = loc;
  return make(std::move(t));
}

CoreRef CoreTerm::fun(std::string x, SurfaceType ty, CoreRef body, SourceLoc loc) {
  CoreTerm t;
  t.kind = Kind::Fun;
  t.name = std::move(x);
  t.binder_type = std::move(ty);
  t.args = {std::move(body)};
  t.loc = loc;
  return make(std::move(t));
}

CoreRef CoreTerm::loop(std::string i, std::optional<SizeExpr> n, CoreRef body, SourceLoc loc) {
  CoreTerm t;
  t.kind = Kind::For;
  t.name = std::move(i);
  t.bound = std::move(n);
  t.args = {std::move(body)};
  t.loc = loc;
  return make(std::move(t));
}

CoreRef CoreTerm::ite(CoreRef c, CoreRef a, CoreRef b, SourceLoc loc) {
  CoreTerm t;
  t.kind = Kind::Ite;
  t.args = {std::move(c), std::move(a), std::move(b)};
  t.loc = loc;
  return make(std::move(t));
}

CoreRef CoreTerm::let(std::string x, std::optional<SurfaceType> annot, CoreRef bound,
                      CoreRef body, SourceLoc loc) {
  CoreTerm t;
  t.kind = Kind::Let;
  t.name = std::move(x);
  t.binder_type = std::move(annot);
  t.args = {std::move(bound), std::move(body)};
  t.loc = loc;
  return make(std::move(t));
}

bool operator==(const CoreTerm& a, const CoreTerm& b) {
  if (a.kind != b.kind || a.name != b.name || !(a.constant == b.constant) ||
      a.binder_type != b.binder_type || a.bound != b.bound || a.literal_type != b.literal_type ||
      a.args.size() != b.args.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!(*a.args[k] == *b.args[k])) return false;
  }
  return true;
}

bool is_core_only(const CoreTerm& t) {
  std::size_t expected = 0;
  switch (t.kind) {
    case CoreTerm::Kind::Var:
      expected = 0;
      break;
    case CoreTerm::Kind::Const:
      expected = arity(t.constant.op);
      break;
    case CoreTerm::Kind::Fun:
      if (!t.binder_type) return false;
      expected = 1;
      break;
    case CoreTerm::Kind::For:
      expected = 1;
      break;
    case CoreTerm::Kind::Ite:
      expected = 3;
      break;
    case CoreTerm::Kind::Let:
      expected = 2;
      break;
  }
  if (t.args.size() != expected) return false;
  return std::all_of(t.args.begin(), t.args.end(),
                     [](const CoreRef& a) { return a && is_core_only(*a); });
}

std::string print_core(const CoreTerm& t) {
  auto arg = [&](std::size_t k) { return print_core(*t.args[k]); };
  switch (t.kind) {
    case CoreTerm::Kind::Var:
      return t.name;
    case CoreTerm::Kind::Const: {
      const Constant& c = t.constant;
      if (c.op == Op::NatLit) return std::to_string(c.nat);
      if (c.op == Op::FltLit) return fmt::format("{}", c.flt);
      std::string out = fmt::format("({}", op_name(c.op));
      for (std::size_t k = 0; k < t.args.size(); ++k) out += " " + arg(k);
      return out + ")";
    }
    case CoreTerm::Kind::Fun:
      return fmt::format("(fun {}: {}. {})", t.name, t.binder_type->str(), arg(0));
    case CoreTerm::Kind::For:
      return fmt::format("(for {}{}. {})", t.name, t.bound ? ":" + t.bound->str() : "", arg(0));
    case CoreTerm::Kind::Ite:
      return fmt::format("(ite {} {} {})", arg(0), arg(1), arg(2));
    case CoreTerm::Kind::Let:
      return fmt::format("(let {}{} := {}; {})", t.name,
                         t.binder_type ? " : " + t.binder_type->str() : "", arg(0), arg(1));
  }
  return "?";
}

// --- desugaring --------------------------------------------------------------

SizeEnv resolve_sizes(const SurfaceProgram& p, const SizeEnv& explicit_sizes) {
  SizeEnv env;
  for (const auto& [name, value] : explicit_sizes) {
    bool declared = std::any_of(p.sizes.begin(), p.sizes.end(),
                                [&](const SizeDecl& d) { return d.name == name; });
    if (!declared) throw CompileError({}, fmt::format("unknown size parameter {}", name));
    env[name] = value;
  }
  for (const auto& d : p.sizes) {
    if (env.count(d.name)) continue;
    if (!d.default_value) throw CompileError(d.loc, fmt::format("unbound size variable {}", d.name));
    env[d.name] = *d.default_value;
  }
  return env;
}

namespace {

class Desugarer {
 public:
  Desugarer(const SizeEnv& sizes, std::set<std::string, std::less<>> defs)
      : sizes_(sizes), defs_(std::move(defs)) {}

  void bind(const std::string& name) { scope_.push_back(name); }
  void unbind(std::size_t n) { scope_.resize(scope_.size() - n); }

  void check_sizes(const SizeExpr& s) const {
    std::vector<std::string> vars;
    s.collect_vars(vars);
    for (const auto& v : vars) {
      if (!sizes_.count(v)) throw CompileError(s.loc, fmt::format("unbound size variable {}", v));
    }
  }

  void check_sizes(const SurfaceType& t) const {
    if (t.size) check_sizes(*t.size);
    if (t.a) check_sizes(*t.a);
    if (t.b) check_sizes(*t.b);
  }

  bool in_scope(std::string_view name) const {
    return std::find(scope_.begin(), scope_.end(), name) != scope_.end() || defs_.count(name);
  }

  CoreRef term(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Var:
        if (!in_scope(e.name)) {
          throw CompileError(e.loc, fmt::format("unbound variable {}", e.name));
        }
        return CoreTerm::var(e.name, e.loc);
      case Expr::Kind::Nat:
        return CoreTerm::constant_app(Constant::nat_lit(e.nat), {}, e.loc);
      case Expr::Kind::Flt:
        return CoreTerm::constant_app(Constant::flt_lit(e.flt), {}, e.loc);
      case Expr::Kind::Binary: {
        Op op = e.op == '+' ? Op::Add : e.op == '-' ? Op::Sub : e.op == '*' ? Op::Mul : Op::Div;
        return CoreTerm::constant_app(Constant::of(op), {term(*e.kids[0]), term(*e.kids[1])},
                                      e.loc);
      }
      case Expr::Kind::Call:
        return call(e);
      case Expr::Kind::Index: {
        CoreRef acc = term(*e.kids[0]);
        for (std::size_t k = 1; k < e.kids.size(); ++k) {
          acc = CoreTerm::constant_app(Constant::of(Op::Get), {acc, term(*e.kids[k])}, e.loc);
        }
        return acc;
      }
      case Expr::Kind::Proj:
        return CoreTerm::constant_app(Constant::of(e.proj == 1 ? Op::Fst : Op::Snd),
                                      {term(*e.kids[0])}, e.loc);
      case Expr::Kind::Pair:
        return CoreTerm::constant_app(Constant::of(Op::Pair),
                                      {term(*e.kids[0]), term(*e.kids[1])}, e.loc);
      case Expr::Kind::Let: {
        if (e.annot) check_sizes(*e.annot);
        CoreRef bound = term(*e.kids[0]);
        bind(e.name);
        CoreRef body = term(*e.kids[1]);
        unbind(1);
        return CoreTerm::let(e.name, e.annot, std::move(bound), std::move(body), e.loc);
      }
      case Expr::Kind::For:
        return loops(e, 0);
      case Expr::Kind::Sum:
        return sums(e, 0);
      case Expr::Kind::Fun:
        return funs(e, 0);
      case Expr::Kind::If:
        return CoreTerm::ite(term(*e.kids[0]), term(*e.kids[1]), term(*e.kids[2]), e.loc);
    }
    throw InternalError("unhandled surface expression");
  }

  // `for i:n, j:m. e` is `for i:n. for j:m. e`.
  CoreRef loops(const Expr& e, std::size_t k) {
    if (k == e.binders.size()) return term(*e.kids[0]);
    const Binder& b = e.binders[k];
    if (b.bound) check_sizes(*b.bound);
    bind(b.name);
    CoreRef body = loops(e, k + 1);
    unbind(1);
    return CoreTerm::loop(b.name, b.bound, std::move(body), b.loc);
  }

  // `sum i:n. e` is `sum (for i:n. e)`; several binders nest sums.
  CoreRef sums(const Expr& e, std::size_t k) {
    if (k == e.binders.size()) return term(*e.kids[0]);
    const Binder& b = e.binders[k];
    if (!b.bound) {
      throw CompileError(b.loc, fmt::format("summation index {} needs an explicit bound", b.name));
    }
    check_sizes(*b.bound);
    bind(b.name);
    CoreRef body = sums(e, k + 1);
    unbind(1);
    return CoreTerm::constant_app(Constant::of(Op::Sum),
                                  {CoreTerm::loop(b.name, b.bound, std::move(body), b.loc)},
                                  b.loc);
  }

  CoreRef funs(const Expr& e, std::size_t k) {
    if (k == e.binders.size()) return term(*e.kids[0]);
    const Binder& b = e.binders[k];
    check_sizes(*b.type);
    bind(b.name);
    CoreRef body = funs(e, k + 1);
    unbind(1);
    return CoreTerm::fun(b.name, *b.type, std::move(body), b.loc);
  }

  CoreRef call(const Expr& e) {
    if (auto op = builtin_by_name(e.name)) {
      if (e.kids.size() != arity(*op)) {
        throw CompileError(e.loc, fmt::format("'{}' expects {} argument(s), got {}", e.name,
                                              arity(*op), e.kids.size()));
      }
      std::vector<CoreRef> args;
      for (const auto& k : e.kids) args.push_back(term(*k));
      return CoreTerm::constant_app(Constant::of(*op), std::move(args), e.loc);
    }
    if (!in_scope(e.name)) {
      throw CompileError(e.loc, fmt::format("reference to undefined definition {}", e.name));
    }
    CoreRef acc = CoreTerm::var(e.name, e.loc);
    for (const auto& k : e.kids) {
      acc = CoreTerm::constant_app(Constant::of(Op::App), {acc, term(*k)}, e.loc);
    }
    return acc;
  }

 private:
  const SizeEnv& sizes_;
  std::set<std::string, std::less<>> defs_;
  std::vector<std::string> scope_;
};

SurfaceType curried(const std::vector<Param>& params, const SurfaceType& ret) {
  SurfaceType t = ret;
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    t = SurfaceType::arrow(it->type, std::move(t));
  }
  return t;
}

CoreRef wrap_params(const std::vector<Param>& params, CoreRef body) {
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    body = CoreTerm::fun(it->name, it->type, std::move(body), it->loc);
  }
  return body;
}

}  // namespace

Desugared desugar(const SurfaceProgram& p, const SizeEnv& sizes,
                  std::optional<std::string> entry) {
  if (p.defs.empty()) throw CompileError({1, 1}, "program has no definitions");
  std::size_t entry_ix = p.defs.size() - 1;
  if (entry) {
    auto it = std::find_if(p.defs.begin(), p.defs.end(),
                           [&](const Definition& d) { return d.name == *entry; });
    if (it == p.defs.end()) {
      throw CompileError({1, 1}, fmt::format("reference to undefined definition {}", *entry));
    }
    entry_ix = static_cast<std::size_t>(it - p.defs.begin());
  }

  // Each definition sees only the definitions before it.
  std::set<std::string, std::less<>> visible;
  std::vector<std::pair<const Definition*, CoreRef>> lowered;
  for (std::size_t k = 0; k <= entry_ix; ++k) {
    const Definition& d = p.defs[k];
    Desugarer ds(sizes, visible);
    for (const auto& prm : d.params) ds.check_sizes(prm.type);
    ds.check_sizes(d.ret);
    for (const auto& prm : d.params) ds.bind(prm.name);
    lowered.emplace_back(&d, ds.term(*d.body));
    visible.insert(d.name);
  }

  const Definition& main = p.defs[entry_ix];
  for (const auto& prm : main.params) {
    if (p.find(prm.name) && p.find(prm.name) < &main) {
      throw CompileError(prm.loc,
                         fmt::format("parameter {} shadows the definition of the same name",
                                     prm.name));
    }
  }

  CoreRef body = lowered.back().second;
  for (std::size_t k = entry_ix; k-- > 0;) {
    const Definition& d = *lowered[k].first;
    CoreRef fn = wrap_params(d.params, lowered[k].second);
    body = CoreTerm::let(d.name, curried(d.params, d.ret), std::move(fn), std::move(body), d.loc);
  }

  Desugared out;
  out.term = wrap_params(main.params, std::move(body));
  out.type = curried(main.params, main.ret);
  for (const auto& prm : main.params) out.params.push_back({prm.name, prm.type});
  out.ret = main.ret;
  out.entry = main.name;
  return out;
}

}  // namespace arrc::syntax
