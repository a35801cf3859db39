#include "arrc/type.h"

#include <fmt/format.h>

#include "arrc/diagnostics.h"

namespace arrc {

Type Type::fin(std::uint64_t bound) {
  return Type(std::make_shared<const Node>(Node{Kind::Fin, bound, nullptr, nullptr}));
}

Type Type::flt() {
  static const Type kFlt(std::make_shared<const Node>(Node{Kind::Flt, 0, nullptr, nullptr}));
  return kFlt;
}

Type Type::prod(Type first, Type second) {
  return Type(std::make_shared<const Node>(Node{Kind::Prod, 0,
                                                std::make_shared<const Type>(std::move(first)),
                                                std::make_shared<const Type>(std::move(second))}));
}

Type Type::arrow(Type param, Type result) {
  return Type(std::make_shared<const Node>(Node{Kind::Arrow, 0,
                                                std::make_shared<const Type>(std::move(param)),
                                                std::make_shared<const Type>(std::move(result))}));
}

Type Type::array(std::uint64_t length, Type elem) {
  return Type(std::make_shared<const Node>(
      Node{Kind::Array, length, std::make_shared<const Type>(std::move(elem)), nullptr}));
}

std::uint64_t Type::size() const {
  if (!is(Kind::Fin) && !is(Kind::Array)) throw InternalError("size() of non-sized type " + str());
  return node_->size;
}

const Type& Type::first() const {
  if (!is(Kind::Prod)) throw InternalError("first() of " + str());
  return *node_->a;
}

const Type& Type::second() const {
  if (!is(Kind::Prod)) throw InternalError("second() of " + str());
  return *node_->b;
}

const Type& Type::param() const {
  if (!is(Kind::Arrow)) throw InternalError("param() of " + str());
  return *node_->a;
}

const Type& Type::result() const {
  if (!is(Kind::Arrow)) throw InternalError("result() of " + str());
  return *node_->b;
}

const Type& Type::elem() const {
  if (!is(Kind::Array)) throw InternalError("elem() of " + str());
  return *node_->a;
}

bool Type::first_order() const {
  switch (kind()) {
    case Kind::Fin:
    case Kind::Flt:
      return true;
    case Kind::Prod:
      return first().first_order() && second().first_order();
    case Kind::Arrow:
      return false;
    case Kind::Array:
      return elem().first_order();
  }
  return false;
}

std::string Type::str() const {
  switch (kind()) {
    case Kind::Fin:
      return fmt::format("fin {}", node_->size);
    case Kind::Flt:
      return "flt";
    case Kind::Prod:
      return fmt::format("({}, {})", first().str(), second().str());
    case Kind::Arrow: {
      bool wrap = param().is(Kind::Arrow) || param().is(Kind::Array);
      return wrap ? fmt::format("({}) -> {}", param().str(), result().str())
                : fmt::format("{} -> {}", param().str(), result().str());
    }
    case Kind::Array:
      return fmt::format("{} => {}", node_->size, elem().str());
  }
  return "?";
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Fin:
      return a.node_->size == b.node_->size;
    case Type::Kind::Flt:
      return true;
    case Type::Kind::Prod:
    case Type::Kind::Arrow:
      return *a.node_->a == *b.node_->a && *a.node_->b == *b.node_->b;
    case Type::Kind::Array:
      return a.node_->size == b.node_->size && *a.node_->a == *b.node_->a;
  }
  return false;
}

}  // namespace arrc
