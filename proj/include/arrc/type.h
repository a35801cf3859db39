#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace arrc {

// Types of the array language. Sizes are concrete naturals: size parameters
// are instantiated before type checking.
//
//   Fin n | flt | t × t | t → t | n ⇒ t
class Type {
 public:
  enum class Kind { Fin, Flt, Prod, Arrow, Array };

  static Type fin(std::uint64_t bound);
  static Type flt();
  static Type prod(Type first, Type second);
  static Type arrow(Type param, Type result);
  static Type array(std::uint64_t length, Type elem);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  // Fin bound or Array length.
  std::uint64_t size() const;
  const Type& first() const;   // Prod
  const Type& second() const;  // Prod
  const Type& param() const;   // Arrow
  const Type& result() const;  // Arrow
  const Type& elem() const;    // Array

  // True when no arrow occurs anywhere inside the type.
  bool first_order() const;

  // Concrete syntax accepted by the type parser: `fin 3`, `flt`,
  // `(flt, fin 2)`, `flt -> flt`, `3 => flt`.
  std::string str() const;

  friend bool operator==(const Type& a, const Type& b);

 private:
  struct Node {
    Kind kind;
    std::uint64_t size = 0;
    std::shared_ptr<const Type> a;
    std::shared_ptr<const Type> b;
  };

  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace arrc
