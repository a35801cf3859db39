#pragma once

// Surface syntax: lexer, parser, pretty printer and desugaring to core terms.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arrc/constant.h"
#include "arrc/diagnostics.h"

namespace arrc::syntax {

using SizeEnv = std::map<std::string, std::uint64_t, std::less<>>;

// Size expressions appear in types and `for` bounds: `n`, `3`, `n+m-1`.
struct SizeExpr {
  enum class Kind { Lit, Var, Add, Sub, Mul };

  Kind kind = Kind::Lit;
  std::uint64_t lit = 0;
  std::string var;
  std::shared_ptr<const SizeExpr> lhs;
  std::shared_ptr<const SizeExpr> rhs;
  SourceLoc loc;

  static SizeExpr literal(std::uint64_t n, SourceLoc loc = {});
  static SizeExpr variable(std::string name, SourceLoc loc = {});
  static SizeExpr binary(Kind k, SizeExpr l, SizeExpr r, SourceLoc loc = {});

  // Throws CompileError on unbound variables and on negative results.
  std::uint64_t eval(const SizeEnv& env) const;
  void collect_vars(std::vector<std::string>& out) const;
  std::string str() const;

  // Structural; ignores locations.
  friend bool operator==(const SizeExpr& a, const SizeExpr& b);
};

// A type as written in the source, sizes still symbolic.
struct SurfaceType {
  enum class Kind { Fin, Flt, Prod, Arrow, Array };

  Kind kind = Kind::Flt;
  std::optional<SizeExpr> size;  // Fin bound / Array length
  std::shared_ptr<const SurfaceType> a;
  std::shared_ptr<const SurfaceType> b;
  SourceLoc loc;

  static SurfaceType flt(SourceLoc loc = {});
  static SurfaceType fin(SizeExpr n, SourceLoc loc = {});
  static SurfaceType prod(SurfaceType l, SurfaceType r, SourceLoc loc = {});
  static SurfaceType arrow(SurfaceType l, SurfaceType r, SourceLoc loc = {});
  static SurfaceType array(SizeExpr n, SurfaceType elem, SourceLoc loc = {});

  void collect_size_vars(std::vector<std::string>& out) const;
  std::string str() const;

  friend bool operator==(const SurfaceType& a, const SurfaceType& b);
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Binder {
  std::string name;
  std::optional<SizeExpr> bound;     // for / sum
  std::optional<SurfaceType> type;   // fun
  SourceLoc loc;

  friend bool operator==(const Binder& a, const Binder& b);
};

// Surface expression tree, before desugaring.
struct Expr {
  enum class Kind {
    Var,     // x
    Nat,     // 3
    Flt,     // 1.5
    Binary,  // a + b, a - b, a * b, a / b
    Call,    // f(a, b), max(a, b), sqrt x
    Index,   // a[i], a[i, j]
    Proj,    // e.1, e.2, fst e, snd e
    Pair,    // (a, b)
    Let,     // let x := e; body
    For,     // for i:n, j:m. e
    Sum,     // sum i:n. e
    Fun,     // fun x: t. e
    If,      // if c then a else b
  };

  Kind kind = Kind::Var;
  SourceLoc loc;
  std::string name;  // Var, Call callee, Let variable
  char op = 0;       // Binary
  std::uint64_t nat = 0;
  double flt = 0.0;
  int proj = 0;  // 1 or 2
  std::optional<SurfaceType> annot;  // Let
  std::vector<Binder> binders;       // For, Sum, Fun
  std::vector<ExprPtr> kids;

  // Structural; ignores locations.
  friend bool operator==(const Expr& a, const Expr& b);
};

struct Param {
  std::string name;
  SurfaceType type;
  SourceLoc loc;

  friend bool operator==(const Param& a, const Param& b);
};

struct Definition {
  std::string name;
  std::vector<Param> params;
  SurfaceType ret;
  ExprPtr body;
  SourceLoc loc;

  friend bool operator==(const Definition& a, const Definition& b);
};

struct SizeDecl {
  std::string name;
  std::optional<std::uint64_t> default_value;
  SourceLoc loc;

  friend bool operator==(const SizeDecl&, const SizeDecl&) = default;
};

struct SurfaceProgram {
  std::vector<SizeDecl> sizes;
  std::vector<Definition> defs;

  const Definition* find(std::string_view name) const;

  friend bool operator==(const SurfaceProgram& a, const SurfaceProgram& b);
};

// Parses a whole `.arr` source file.
SurfaceProgram parse_program(std::string_view text);

// Parses a standalone type, e.g. `3 => (flt, fin 2)`.
SurfaceType parse_type(std::string_view text);

// Renders a program in concrete syntax that re-parses to an equal program.
std::string print_program(const SurfaceProgram& p);
std::string print_expr(const Expr& e);

// --- core terms -----------------------------------------------------------

struct CoreTerm;
using CoreRef = std::shared_ptr<const CoreTerm>;

// The six forms of the core language. Sizes and binder types stay symbolic;
// the checker evaluates them against the size environment.
struct CoreTerm {
  enum class Kind { Var, Const, Fun, For, Ite, Let };

  Kind kind = Kind::Var;
  SourceLoc loc;
  std::string name;   // Var; binder of Fun/For/Let
  Constant constant;  // Const
  std::vector<CoreRef> args;  // Const args | Fun/For body | Ite c,t,e | Let bound,body
  std::optional<SurfaceType> binder_type;  // Fun param type; optional Let annotation
  std::optional<SizeExpr> bound;           // For; absent = inferred from context
  // Literal type fixed in advance (used when forgetting typed terms whose
  // natural literals carry a non-minimal bound).
  std::optional<SurfaceType> literal_type;

  static CoreRef var(std::string name, SourceLoc loc = {});
  static CoreRef constant_app(Constant c, std::vector<CoreRef> args, SourceLoc loc = {});
  static CoreRef fun(std::string x, SurfaceType t, CoreRef body, SourceLoc loc = {});
  static CoreRef loop(std::string i, std::optional<SizeExpr> n, CoreRef body,
                      SourceLoc loc = {});
  static CoreRef ite(CoreRef c, CoreRef t, CoreRef e, SourceLoc loc = {});
  static CoreRef let(std::string x, std::optional<SurfaceType> annot, CoreRef bound,
                     CoreRef body, SourceLoc loc = {});

  // Structural; ignores locations.
  friend bool operator==(const CoreTerm& a, const CoreTerm& b);
};

struct EntryParam {
  std::string name;
  SurfaceType type;
};

struct Desugared {
  // Entry parameters become the outermost Fun binders of `term`.
  CoreRef term;
  // Declared entry type: params curried in front of the return type.
  SurfaceType type;
  std::vector<EntryParam> params;
  SurfaceType ret;
  std::string entry;
};

// Resolves the size environment: explicit bindings override declared
// defaults. Throws on undeclared names and on declarations left unbound.
SizeEnv resolve_sizes(const SurfaceProgram& p, const SizeEnv& explicit_sizes);

// Desugars the entry definition (the last one unless `entry` is given).
// Definitions preceding the entry are inlined as let-bound curried functions.
Desugared desugar(const SurfaceProgram& p, const SizeEnv& sizes,
                  std::optional<std::string> entry = std::nullopt);

// Pretty-prints a core term (for diagnostics and dumps).
std::string print_core(const CoreTerm& t);

// True when every node is one of the six core forms with sugar removed; used
// by structural scans in tests.
bool is_core_only(const CoreTerm& t);

}  // namespace arrc::syntax
