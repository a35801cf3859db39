#pragma once

// A-iNF: a flat sequence of let-bindings, each under a scope context of loop
// indices, function parameters and branch conditions, binding exactly one
// non-nested primitive.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arrc/constant.h"
#include "arrc/eval.h"
#include "arrc/type.h"
#include "arrc/value.h"

namespace arrc::ainf {

// A variable or an index, with its type.
struct VPar {
  enum class Kind { Var, Idx };

  Kind kind = Kind::Var;
  std::string name;
  Type type = Type::flt();

  static VPar var(std::string name, Type t) { return {Kind::Var, std::move(name), std::move(t)}; }
  static VPar idx(std::string name, Type t) { return {Kind::Idx, std::move(name), std::move(t)}; }

  bool is_var() const { return kind == Kind::Var; }
  bool is_idx() const { return kind == Kind::Idx; }

  friend bool operator==(const VPar& a, const VPar& b);
};

struct EnvEntry {
  enum class Kind { For, Fun, IfTrue, IfFalse };

  Kind kind = Kind::For;
  std::string index;        // For, Fun
  std::uint64_t bound = 0;  // For
  Type param = Type::flt(); // Fun
  VPar cond;                // IfTrue, IfFalse

  static EnvEntry loop(std::string i, std::uint64_t n);
  static EnvEntry fun(std::string i, Type t);
  static EnvEntry if_true(VPar c);
  static EnvEntry if_false(VPar c);

  bool binds_index() const { return kind == Kind::For || kind == Kind::Fun; }
  // Type of the bound index: Fin n for loops, the parameter type for funs.
  Type index_type() const;

  friend bool operator==(const EnvEntry& a, const EnvEntry& b);
};

using Env = std::vector<EnvEntry>;

struct Prim {
  enum class Kind { Const, Idx, Fun, For, Ite };

  Kind kind = Kind::Const;
  Constant constant;              // Const
  std::vector<VPar> operands;     // Const args | Fun/For body | Ite c,t,e
  std::string index;              // Idx, Fun, For
  std::uint64_t bound = 0;        // For
  Type param = Type::flt();       // Fun

  static Prim constant_app(Constant c, std::vector<VPar> args);
  static Prim index_ref(std::string i);
  static Prim fun(std::string i, Type t, VPar body);
  static Prim loop(std::string i, std::uint64_t n, VPar body);
  static Prim ite(VPar c, VPar t, VPar e);

  friend bool operator==(const Prim& a, const Prim& b);
};

struct Binding {
  Env env;
  std::string var;
  Type type = Type::flt();
  Prim prim;
};

struct Param {
  std::string name;
  Type type;
};

struct Program {
  std::vector<Param> params;
  std::vector<Binding> bindings;
  VPar result;
};

struct Diagnostic {
  std::size_t binding = 0;  // index into bindings; == size() for the result
  std::string message;
};

// Scope and type validation. Empty result means the program is well formed.
//  - an operand variable's binder Env must be an order-preserving
//    subsequence of the use-site Env;
//  - `ite c xt xf` may read xt bound under if c!=0 and xf under if c=0;
//  - for/fun bodies live under the binding's Env extended by that index;
//  - prim result types agree with the bound variable's type.
std::vector<Diagnostic> validate(const Program& a);

// Every loop/function body is a single VPar and every operand resolves.
bool maximally_fissioned(const Program& a);

struct EvalCounters {
  // Prim evaluations per binding variable.
  std::map<std::string, std::uint64_t, std::less<>> per_binding;
};

// Evaluates bindings in order. A binding under loop entries materializes the
// full table over its index tuples, restricted by its if-entries. Bindings
// under fun entries are evaluated on demand when the function is applied.
Value ainf_eval(const Program& a, const ValueEnv& params, EvalCounters* counters = nullptr);

// One line per binding plus the params header and the result line.
std::string pretty(const Program& a);

// Parses the pretty format back. Float literals printed with six decimals
// lose precision; everything else round-trips.
Program parse_ainf(std::string_view text);

// Tab-separated dump: env | var | type | prim, floats in full precision.
std::string dump_records(const Program& a);

struct Stats {
  std::size_t bindings = 0;
  // Number of bindings per count of index entries (loop and fun) in the Env.
  std::map<std::size_t, std::size_t> arity;

  std::size_t arity_at_least(std::size_t k) const;
};

Stats stats(const Program& a);

// Equality up to a consistent renaming of variables and indices.
bool alpha_equivalent(const Program& a, const Program& b);

std::string print_env(const Env& env);
std::string print_prim(const Prim& p, const Type& type);

}  // namespace arrc::ainf
