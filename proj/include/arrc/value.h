#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "arrc/constant.h"
#include "arrc/type.h"

namespace arrc {

class Value;

// Runtime values shared by the reference interpreter and the A-iNF
// interpreter. Arrays are eager: every element is already evaluated.
class Value {
 public:
  enum class Kind { Fin, Flt, Pair, Fun, Arr };
  using Fn = std::function<Value(const Value&)>;

  static Value fin(std::uint64_t n, std::uint64_t bound);
  static Value flt(double f);
  static Value pair(Value a, Value b);
  static Value fun(Fn f);
  static Value arr(std::vector<Value> elems);

  Value() = default;

  Kind kind() const { return kind_; }
  std::uint64_t nat() const { return nat_; }
  std::uint64_t bound() const { return bound_; }
  double as_flt() const { return flt_; }
  const Value& first() const;
  const Value& second() const;
  const std::vector<Value>& elems() const;
  Value apply(const Value& arg) const;

  // Value literal syntax: `1.5`, `3`, `(a, b)`, `[v0, v1]`.
  std::string str() const;

 private:
  Kind kind_ = Kind::Flt;
  std::uint64_t nat_ = 0;
  std::uint64_t bound_ = 0;
  double flt_ = 0.0;
  std::shared_ptr<const std::vector<Value>> kids_;  // Pair (2) or Arr
  std::shared_ptr<const Fn> fn_;
};

// Parses a value literal of the given type. Arrays must match the declared
// length exactly. Throws std::invalid_argument with a description on
// mismatch.
Value parse_value(std::string_view text, const Type& type);

// Does `v` have the shape of `t` (lengths, Fin bounds, pair structure)?
// Functions are accepted at arrow types without inspection.
bool has_shape(const Value& v, const Type& t);

// Agreement between two first-order values: Fin exact, Flt equal within
// `rel_tol` relative (NaN agrees with NaN).
bool values_agree(const Value& a, const Value& b, double rel_tol = 1e-12);

// Standard normal CDF, Φ(x) = ½(1 + erf(x/√2)) with the C library's erf.
double norm_cdf(double x);

// Scalar semantics of constants. Both interpreters and constant folding go
// through these so float results are bitwise identical across stages.
double apply_float_binary(Op op, double a, double b);
double apply_float_unary(Op op, double a);
std::uint64_t apply_fin_binary(Op op, std::uint64_t a, std::uint64_t b);

// Applies any non-literal constant to evaluated arguments. `result` is the
// constant's result type (needed for Fin bounds).
Value apply_constant(const Constant& c, const std::vector<Value>& args, const Type& result);

}  // namespace arrc
