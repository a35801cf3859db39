#pragma once

// Typed partial evaluation by normalization by evaluation.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "arrc/type.h"
#include "arrc/typed_term.h"

namespace arrc::nbe {

struct Options {
  // Fold float arithmetic and intrinsics whose operands are all literals.
  bool fold_floats = true;
  // Float identities 0+x, x+0, 1·x, x·1, x−0, x/1 → x. Note that x+0 → x is
  // not IEEE-exact for x = −0.
  bool identities = true;
};

class Den;
using DenFn = std::function<Den(const Den&)>;

// Semantic value indexed by type: a residual term at Fin and flt, a pair of
// denotations at products, and a host function at arrows and arrays (arrays
// take a residual index term).
class Den {
 public:
  static Den residual(TermRef t);
  static Den pair(Den a, Den b);
  static Den fn(DenFn f);

  bool is_residual() const { return term_ != nullptr; }
  const TermRef& term() const;
  const Den& first() const;
  const Den& second() const;
  Den operator()(const Den& arg) const;

 private:
  TermRef term_;
  std::shared_ptr<const std::pair<Den, Den>> pair_;
  std::shared_ptr<const DenFn> fn_;
};

using DenEnv = std::map<std::string, Den, std::less<>>;

// One normalization run. Owns the fresh-name counter used by quote.
class Normalizer {
 public:
  explicit Normalizer(Options opts = {}) : opts_(opts) {}

  Den denote(const DenEnv& env, const TypedTerm& e);
  TermRef quote(const Type& t, const Den& d);
  Den splice(const Type& t, TermRef e);

  // Fresh binder names `_1`, `_2`, ...; never valid surface identifiers.
  std::string fresh();

 private:
  Den denote_const(const TypedTerm& e, std::vector<Den> args);
  Den arith(const TypedTerm& e, const Den& a, const Den& b);

  Options opts_;
  std::uint64_t counter_ = 0;
};

struct Param {
  std::string name;
  Type type;
};

// norm e = quote(denote e), with each parameter spliced as an opaque residual.
TermRef normalize(const TypedTerm& e, const std::vector<Param>& params = {},
                  Options opts = {});

// Normal-form scan: no Let, and no app/get/fst/snd applied directly to a
// fun/for/pair constructor.
bool is_normal(const TypedTerm& t);

}  // namespace arrc::nbe
