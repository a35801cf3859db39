#include "arrc/value.h"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "arrc/diagnostics.h"

namespace arrc {

Value Value::fin(std::uint64_t n, std::uint64_t bound) {
  Value v;
  v.kind_ = Kind::Fin;
  v.nat_ = n;
  v.bound_ = bound;
  return v;
}

Value Value::flt(double f) {
  Value v;
  v.kind_ = Kind::Flt;
  v.flt_ = f;
  return v;
}

Value Value::pair(Value a, Value b) {
  Value v;
  v.kind_ = Kind::Pair;
  v.kids_ = std::make_shared<const std::vector<Value>>(std::vector<Value>{std::move(a), std::move(b)});
  return v;
}

Value Value::fun(Fn f) {
  Value v;
  v.kind_ = Kind::Fun;
  v.fn_ = std::make_shared<const Fn>(std::move(f));
  return v;
}

Value Value::arr(std::vector<Value> elems) {
  Value v;
  v.kind_ = Kind::Arr;
  v.kids_ = std::make_shared<const std::vector<Value>>(std::move(elems));
  return v;
}

const Value& Value::first() const {
  if (kind_ != Kind::Pair) throw InternalError("first() of a non-pair value");
  return (*kids_)[0];
}

const Value& Value::second() const {
  if (kind_ != Kind::Pair) throw InternalError("second() of a non-pair value");
  return (*kids_)[1];
}

const std::vector<Value>& Value::elems() const {
  if (kind_ != Kind::Arr) throw InternalError("elems() of a non-array value");
  return *kids_;
}

Value Value::apply(const Value& arg) const {
  if (kind_ != Kind::Fun) throw InternalError("apply() of a non-function value");
  return (*fn_)(arg);
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::Fin:
      return std::to_string(nat_);
    case Kind::Flt:
      return fmt::format("{}", flt_);
    case Kind::Pair:
      return fmt::format("({}, {})", first().str(), second().str());
    case Kind::Fun:
      return "<fun>";
    case Kind::Arr: {
      std::string out = "[";
      for (std::size_t k = 0; k < kids_->size(); ++k) {
        if (k) out += ", ";
        out += (*kids_)[k].str();
      }
      return out + "]";
    }
  }
  return "?";
}

// --- parsing -------------------------------------------------------------------

namespace {

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) : text_(text) {}

  Value parse(const Type& t) {
    skip();
    switch (t.kind()) {
      case Type::Kind::Fin: {
        std::uint64_t n = 0;
        auto [ptr, ec] = std::from_chars(rest().data(), rest().data() + rest().size(), n);
        if (ec != std::errc()) fail(fmt::format("expected a natural number for {}", t.str()));
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        if (n >= t.size()) fail(fmt::format("{} is out of range for {}", n, t.str()));
        return Value::fin(n, t.size());
      }
      case Type::Kind::Flt:
        return Value::flt(number());
      case Type::Kind::Prod: {
        eat('(');
        Value a = parse(t.first());
        eat(',');
        Value b = parse(t.second());
        eat(')');
        return Value::pair(std::move(a), std::move(b));
      }
      case Type::Kind::Array: {
        eat('[');
        std::vector<Value> elems;
        skip();
        if (peek() != ']') {
          elems.push_back(parse(t.elem()));
          while (skip(), peek() == ',') {
            ++pos_;
            elems.push_back(parse(t.elem()));
          }
        }
        eat(']');
        if (elems.size() != t.size()) {
          fail(fmt::format("array has {} element(s), {} expects {}", elems.size(), t.str(),
                           t.size()));
        }
        return Value::arr(std::move(elems));
      }
      case Type::Kind::Arrow:
        fail("function values cannot be written as literals");
    }
    fail("unsupported type");
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail(fmt::format("unexpected '{}'", rest()));
  }

 private:
  std::string_view rest() const { return text_.substr(pos_); }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void eat(char c) {
    skip();
    if (peek() != c) fail(fmt::format("expected '{}'", c));
    ++pos_;
  }

  double number() {
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) ||
                                  text_[end] == '.' || text_[end] == '-' || text_[end] == '+')) {
      ++end;
    }
    std::string word(text_.substr(pos_, end - pos_));
    if (word.empty()) fail("expected a number");
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(word, &used);
    } catch (const std::exception&) {
      fail(fmt::format("'{}' is not a number", word));
    }
    if (used != word.size()) fail(fmt::format("'{}' is not a number", word));
    pos_ = end;
    return d;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument(fmt::format("{} at offset {}", msg, pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Value parse_value(std::string_view text, const Type& type) {
  ValueParser p(text);
  Value v = p.parse(type);
  p.finish();
  return v;
}

bool has_shape(const Value& v, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Fin:
      return v.kind() == Value::Kind::Fin && v.bound() == t.size() && v.nat() < t.size();
    case Type::Kind::Flt:
      return v.kind() == Value::Kind::Flt;
    case Type::Kind::Prod:
      return v.kind() == Value::Kind::Pair && has_shape(v.first(), t.first()) &&
             has_shape(v.second(), t.second());
    case Type::Kind::Arrow:
      return v.kind() == Value::Kind::Fun;
    case Type::Kind::Array:
      if (v.kind() != Value::Kind::Arr || v.elems().size() != t.size()) return false;
      return std::all_of(v.elems().begin(), v.elems().end(),
                         [&](const Value& e) { return has_shape(e, t.elem()); });
  }
  return false;
}

bool values_agree(const Value& a, const Value& b, double rel_tol) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::Fin:
      return a.nat() == b.nat() && a.bound() == b.bound();
    case Value::Kind::Flt: {
      double x = a.as_flt();
      double y = b.as_flt();
      if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
      if (x == y) return true;
      return std::fabs(x - y) <= rel_tol * std::max(std::fabs(x), std::fabs(y));
    }
    case Value::Kind::Pair:
      return values_agree(a.first(), b.first(), rel_tol) &&
             values_agree(a.second(), b.second(), rel_tol);
    case Value::Kind::Fun:
      return false;
    case Value::Kind::Arr: {
      if (a.elems().size() != b.elems().size()) return false;
      for (std::size_t k = 0; k < a.elems().size(); ++k) {
        if (!values_agree(a.elems()[k], b.elems()[k], rel_tol)) return false;
      }
      return true;
    }
  }
  return false;
}

// --- scalar semantics ---------------------------------------------------------

double norm_cdf(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

double apply_float_binary(Op op, double a, double b) {
  switch (op) {
    case Op::Add:
      return a + b;
    case Op::Mul:
      return a * b;
    case Op::Sub:
      return a - b;
    case Op::Div:
      return a / b;
    case Op::Max:
      return a < b ? b : a;
    default:
      throw InternalError(fmt::format("'{}' is not a binary float operation", op_name(op)));
  }
}

double apply_float_unary(Op op, double a) {
  switch (op) {
    case Op::Log:
      return std::log(a);
    case Op::Sqrt:
      return std::sqrt(a);
    case Op::Exp:
      return std::exp(a);
    case Op::NormCdf:
      return norm_cdf(a);
    default:
      throw InternalError(fmt::format("'{}' is not a unary float operation", op_name(op)));
  }
}

std::uint64_t apply_fin_binary(Op op, std::uint64_t a, std::uint64_t b) {
  switch (op) {
    case Op::Add:
      return a + b;
    case Op::Mul:
      return a * b;
    default:
      throw InternalError(fmt::format("'{}' is not defined on fin", op_name(op)));
  }
}

Value apply_constant(const Constant& c, const std::vector<Value>& args, const Type& result) {
  switch (c.op) {
    case Op::NatLit:
      return Value::fin(c.nat, result.size());
    case Op::FltLit:
      return Value::flt(c.flt);
    case Op::Add:
    case Op::Mul:
      if (args[0].kind() == Value::Kind::Fin) {
        return Value::fin(apply_fin_binary(c.op, args[0].nat(), args[1].nat()), result.size());
      }
      return Value::flt(apply_float_binary(c.op, args[0].as_flt(), args[1].as_flt()));
    case Op::Sub:
    case Op::Div:
    case Op::Max:
      return Value::flt(apply_float_binary(c.op, args[0].as_flt(), args[1].as_flt()));
    case Op::Log:
    case Op::Sqrt:
    case Op::Exp:
    case Op::NormCdf:
      return Value::flt(apply_float_unary(c.op, args[0].as_flt()));
    case Op::App:
      return args[0].apply(args[1]);
    case Op::Get: {
      const auto& elems = args[0].elems();
      std::uint64_t i = args[1].nat();
      if (i >= elems.size()) throw InternalError("array index out of range");
      return elems[i];
    }
    case Op::Pair:
      return Value::pair(args[0], args[1]);
    case Op::Fst:
      return args[0].first();
    case Op::Snd:
      return args[0].second();
    case Op::Sum: {
      double acc = 0.0;
      for (const auto& e : args[0].elems()) acc += e.as_flt();
      return Value::flt(acc);
    }
  }
  throw InternalError("unhandled constant");
}

}  // namespace arrc
