#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "arrc/constant.h"
#include "arrc/type.h"

namespace arrc {

struct TypedTerm;
using TermRef = std::shared_ptr<const TypedTerm>;

// A core term in which every node carries its type and every binder its
// declared type or bound. Produced by the checker, the random generator and
// normalization; consumed by the interpreter, NbE and lowering.
struct TypedTerm {
  enum class Kind { Var, Const, Fun, For, Ite, Let };

  Kind kind = Kind::Var;
  Type type = Type::flt();
  std::string name;  // Var; binder of Fun/For/Let
  Constant constant;
  std::vector<TermRef> args;  // Const args | Fun/For body | Ite c,t,e | Let bound,body
  // Fun: parameter type. For: Fin bound. Let: type of the bound term.
  Type binder_type = Type::flt();

  std::uint64_t bound() const { return binder_type.size(); }  // For
  const TermRef& body() const { return args.back(); }
};

namespace tt {

TermRef var(std::string name, Type type);
TermRef nat(std::uint64_t n, std::uint64_t fin_bound);
TermRef flt(double f);
// Builds a constant application; `type` is the already-known result type.
TermRef constant(Constant c, std::vector<TermRef> args, Type type);
TermRef fun(std::string x, Type param, TermRef body);
TermRef loop(std::string i, std::uint64_t n, TermRef body);
TermRef ite(TermRef c, TermRef t, TermRef e);
TermRef let(std::string x, TermRef bound, TermRef body);

// Typed constructors for the common constants; result types follow the
// constant signatures.
TermRef app(TermRef f, TermRef a);
TermRef get(TermRef a, TermRef i);
TermRef pair(TermRef a, TermRef b);
TermRef fst(TermRef p);
TermRef snd(TermRef p);
TermRef sum(TermRef a);
TermRef binary(Op op, TermRef a, TermRef b);
TermRef unary(Op op, TermRef a);

}  // namespace tt

// Exact structural equality, binder names included.
bool structurally_equal(const TypedTerm& a, const TypedTerm& b);

// Equality up to consistent renaming of bound names. Free names must match.
bool alpha_equal(const TypedTerm& a, const TypedTerm& b);

// Number of nodes in the tree (shared subterms counted per occurrence).
std::size_t term_size(const TypedTerm& t);

std::string print_term(const TypedTerm& t);

}  // namespace arrc
