#pragma once

// Bidirectional type checker for core terms.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arrc/constant.h"
#include "arrc/syntax.h"
#include "arrc/type.h"
#include "arrc/typed_term.h"

namespace arrc {

// Ordered context; lookup returns the most recent binding of a name.
class Ctx {
 public:
  Ctx() = default;

  Ctx extended(std::string name, Type t) const;
  void push(std::string name, Type t);
  void pop();
  const Type* lookup(std::string_view name) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<std::string, Type>> entries_;
};

// Result type of applying `c` to arguments of the given types. Natural
// literals are not covered here (their type depends on the expected bound).
// Throws std::invalid_argument on arity mismatch or when no signature
// instance matches.
Type const_sig(const Constant& c, std::span<const Type> arg_types);

// Instantiates a surface type with concrete sizes.
Type resolve_type(const syntax::SurfaceType& t, const syntax::SizeEnv& sizes);

// Inverse of resolve_type for concrete types.
syntax::SurfaceType to_surface(const Type& t);

class Checker {
 public:
  explicit Checker(syntax::SizeEnv sizes) : sizes_(std::move(sizes)) {}

  // Synthesizes when `expected` is empty, checks otherwise. Throws
  // CompileError with the offending location on failure.
  TermRef check(const Ctx& ctx, const syntax::CoreTerm& e,
                const std::optional<Type>& expected = std::nullopt) const;

 private:
  TermRef check_in(Ctx& ctx, const syntax::CoreTerm& e,
                   const std::optional<Type>& expected) const;
  TermRef check_const(Ctx& ctx, const syntax::CoreTerm& e,
                      const std::optional<Type>& expected) const;
  TermRef check_arith(Ctx& ctx, const syntax::CoreTerm& e,
                      const std::optional<Type>& expected) const;
  TermRef literal(const syntax::CoreTerm& e, const std::optional<Type>& expected) const;
  Type resolve(const syntax::SurfaceType& t) const;

  syntax::SizeEnv sizes_;
};

// Turns a typed term back into a core term with every size literal. Natural
// literals keep their bound, so re-checking reproduces the same annotations.
syntax::CoreRef forget(const TypedTerm& t);

}  // namespace arrc
