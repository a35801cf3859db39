#pragma once

// Reference big-step interpreter and random well-typed term generation.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arrc/type.h"
#include "arrc/typed_term.h"
#include "arrc/value.h"

namespace arrc {

using ValueEnv = std::map<std::string, Value, std::less<>>;

struct EvalCounters {
  // Number of term nodes evaluated (each array element counts its body).
  std::uint64_t steps = 0;
};

// Evaluates a well-typed term. `counters` is optional instrumentation.
Value eval_term(const ValueEnv& env, const TypedTerm& e, EvalCounters* counters = nullptr);

struct FreeVar {
  std::string name;
  Type type;
};

// A closed well-typed term of type `target`, deterministic in `seed`.
// `depth` bounds the nesting depth (1 yields a leaf). All sizes stay <= 4.
TermRef gen_typed_term(std::uint64_t seed, std::uint32_t depth, const Type& target);

// As above, but the term may refer to the given free variables.
TermRef gen_open_term(std::uint64_t seed, std::uint32_t depth,
                      const std::vector<FreeVar>& free, const Type& target);

// A random first-order type with sizes <= 4.
Type gen_type(std::uint64_t seed, std::uint32_t depth);

// A random value of a first-order type, finite floats only.
Value gen_value(std::uint64_t seed, const Type& t);

}  // namespace arrc
