#include <fmt/format.h>

#include <array>
#include <random>
#include <stdexcept>

#include "arrc/eval.h"

namespace arrc {

namespace {

constexpr std::uint64_t kMaxSize = 4;

constexpr std::array<double, 9> kFloats = {0.0, 1.0, -1.0, 0.5, 2.0, 1.5, -0.25, 3.0, 0.125};

class Gen {
 public:
  Gen(std::uint64_t seed, std::vector<FreeVar> scope) : rng_(seed), scope_(std::move(scope)) {}

  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_);
  }
  std::uint64_t size() { return 1 + below(kMaxSize); }
  bool coin() { return below(2) == 0; }

  // First-order types only.
  Type type(std::uint32_t depth) {
    if (depth <= 1) return coin() ? Type::flt() : Type::fin(size());
    switch (below(5)) {
      case 0:
        return Type::flt();
      case 1:
        return Type::fin(size());
      case 2:
        return Type::prod(type(depth - 1), type(depth - 1));
      default:
        return Type::array(size(), type(depth - 1));
    }
  }

  // Occasionally higher order, used for intermediate bindings.
  Type any_type(std::uint32_t depth) {
    if (depth > 1 && below(5) == 0) return Type::arrow(type(depth - 1), any_type(depth - 1));
    if (depth > 1 && below(6) == 0) return Type::array(size(), any_type(depth - 1));
    return type(depth);
  }

  Value value(const Type& t) {
    switch (t.kind()) {
      case Type::Kind::Fin:
        return Value::fin(below(t.size()), t.size());
      case Type::Kind::Flt:
        return Value::flt(std::uniform_real_distribution<double>(-2.0, 2.0)(rng_));
      case Type::Kind::Prod:
        return Value::pair(value(t.first()), value(t.second()));
      case Type::Kind::Array: {
        std::vector<Value> elems;
        for (std::uint64_t k = 0; k < t.size(); ++k) elems.push_back(value(t.elem()));
        return Value::arr(std::move(elems));
      }
      case Type::Kind::Arrow:
        break;
    }
    throw std::invalid_argument("cannot generate a value of type " + t.str());
  }

  TermRef term(std::uint32_t depth, const Type& t) {
    if (depth <= 1) return leaf(t);
    // Weighted choice between eliminations and the introduction form.
    switch (below(12)) {
      case 0:
      case 1:
        if (auto v = use_var(t)) return v;
        break;
      case 2: {
        Type bt = any_type(depth - 1);
        TermRef bound = term(depth - 1, bt);
        std::string x = fresh("v");
        scope_.push_back({x, bt});
        TermRef body = term(depth - 1, t);
        scope_.pop_back();
        return tt::let(x, std::move(bound), std::move(body));
      }
      case 3:
        return tt::ite(term(depth - 1, Type::fin(2)), term(depth - 1, t), term(depth - 1, t));
      case 4: {
        Type a = any_type(depth - 1);
        TermRef f = term(depth - 1, Type::arrow(a, t));
        return tt::app(std::move(f), term(depth - 1, a));
      }
      case 5: {
        std::uint64_t n = size();
        TermRef arr = term(depth - 1, Type::array(n, t));
        return tt::get(std::move(arr), term(depth - 1, Type::fin(n)));
      }
      case 6: {
        Type other = type(depth - 1);
        if (coin()) return tt::fst(term(depth - 1, Type::prod(t, other)));
        return tt::snd(term(depth - 1, Type::prod(other, t)));
      }
      default:
        break;
    }
    return intro(depth, t);
  }

 private:
  std::string fresh(const char* prefix) { return fmt::format("{}{}", prefix, counter_++); }

  // Can a value of type `from` be eliminated down to `t` in at most `fuel`
  // get/fst/snd/app steps?
  static bool reaches(const Type& from, const Type& t, int fuel) {
    if (from == t) return true;
    if (fuel == 0) return false;
    switch (from.kind()) {
      case Type::Kind::Array:
        return reaches(from.elem(), t, fuel - 1);
      case Type::Kind::Prod:
        return reaches(from.first(), t, fuel - 1) || reaches(from.second(), t, fuel - 1);
      case Type::Kind::Arrow:
        return reaches(from.result(), t, fuel - 1);
      default:
        return false;
    }
  }

  TermRef eliminate(TermRef e, const Type& t, int fuel) {
    if (e->type == t) return e;
    const Type from = e->type;
    switch (from.kind()) {
      case Type::Kind::Array:
        return eliminate(tt::get(std::move(e), index(from.size())), t, fuel - 1);
      case Type::Kind::Prod: {
        bool first = reaches(from.first(), t, fuel - 1);
        bool second = reaches(from.second(), t, fuel - 1);
        if (first && (!second || coin())) return eliminate(tt::fst(std::move(e)), t, fuel - 1);
        return eliminate(tt::snd(std::move(e)), t, fuel - 1);
      }
      case Type::Kind::Arrow: {
        ++nesting_;
        TermRef arg = leaf(from.param());
        --nesting_;
        return eliminate(tt::app(std::move(e), std::move(arg)), t, fuel - 1);
      }
      default:
        throw std::logic_error("eliminate: unreachable type");
    }
  }

  // An in-scope index of bound n if there is one, else a literal.
  TermRef index(std::uint64_t n) {
    if (below(4) != 0) {
      if (auto v = pick_var(Type::fin(n))) return v;
    }
    return tt::nat(below(n), n);
  }

  int nesting_ = 0;

  TermRef pick_var(const Type& t) {
    std::vector<const FreeVar*> hits;
    for (const auto& v : scope_) {
      if (v.type == t) hits.push_back(&v);
    }
    if (hits.empty()) return nullptr;
    const FreeVar* v = hits[below(hits.size())];
    return tt::var(v->name, v->type);
  }

  // A variable in scope, possibly indexed/projected/applied down to `t`.
  TermRef use_var(const Type& t) {
    constexpr int kFuel = 3;
    std::vector<const FreeVar*> hits;
    for (const auto& v : scope_) {
      if (reaches(v.type, t, kFuel)) hits.push_back(&v);
    }
    if (hits.empty()) return nullptr;
    const FreeVar* v = hits[below(hits.size())];
    return eliminate(tt::var(v->name, v->type), t, kFuel);
  }

  TermRef leaf(const Type& t) {
    if (nesting_ < 2 && below(4) != 0) {
      if (auto v = use_var(t)) return v;
    }
    switch (t.kind()) {
      case Type::Kind::Flt:
        return tt::flt(kFloats[below(kFloats.size())]);
      case Type::Kind::Fin:
        return tt::nat(below(t.size()), t.size());
      case Type::Kind::Prod:
        return tt::pair(leaf(t.first()), leaf(t.second()));
      case Type::Kind::Array:
        return bind_index(t.size(), [&] { return leaf(t.elem()); });
      case Type::Kind::Arrow:
        return bind_param(t.param(), [&] { return leaf(t.result()); });
    }
    throw std::invalid_argument("cannot generate a term of type " + t.str());
  }

  template <class F>
  TermRef bind_index(std::uint64_t n, F body) {
    std::string i = fresh("i");
    scope_.push_back({i, Type::fin(n)});
    TermRef b = body();
    scope_.pop_back();
    return tt::loop(i, n, std::move(b));
  }

  template <class F>
  TermRef bind_param(const Type& a, F body) {
    std::string x = fresh("x");
    scope_.push_back({x, a});
    TermRef b = body();
    scope_.pop_back();
    return tt::fun(x, a, std::move(b));
  }

  TermRef intro(std::uint32_t depth, const Type& t) {
    const std::uint32_t d = depth - 1;
    switch (t.kind()) {
      case Type::Kind::Flt:
        switch (below(5)) {
          case 0:
            return tt::flt(kFloats[below(kFloats.size())]);
          case 1: {
            static constexpr std::array<Op, 5> ops = {Op::Add, Op::Mul, Op::Sub, Op::Div,
                                                      Op::Max};
            Op op = ops[below(ops.size())];
            return tt::binary(op, term(d, t), term(d, t));
          }
          case 2: {
            static constexpr std::array<Op, 4> ops = {Op::Log, Op::Sqrt, Op::Exp, Op::NormCdf};
            return tt::unary(ops[below(ops.size())], term(d, t));
          }
          default:
            return tt::sum(term(d, Type::array(size(), Type::flt())));
        }
      case Type::Kind::Fin: {
        std::uint64_t n = t.size();
        switch (below(3)) {
          case 0: {
            // a + b - 1 = n
            std::uint64_t a = 1 + below(n);
            return tt::binary(Op::Add, term(d, Type::fin(a)), term(d, Type::fin(n + 1 - a)));
          }
          case 1: {
            if (n == 1) {
              return tt::binary(Op::Mul, term(d, Type::fin(1)), term(d, Type::fin(size())));
            }
            // (a - 1)(b - 1) = n - 1
            std::vector<std::uint64_t> divisors;
            for (std::uint64_t k = 1; k <= n - 1; ++k) {
              if ((n - 1) % k == 0) divisors.push_back(k);
            }
            std::uint64_t a = divisors[below(divisors.size())];
            return tt::binary(Op::Mul, term(d, Type::fin(a + 1)),
                              term(d, Type::fin((n - 1) / a + 1)));
          }
          default:
            return leaf(t);
        }
      }
      case Type::Kind::Prod:
        return tt::pair(term(d, t.first()), term(d, t.second()));
      case Type::Kind::Array:
        return bind_index(t.size(), [&] { return term(d, t.elem()); });
      case Type::Kind::Arrow:
        return bind_param(t.param(), [&] { return term(d, t.result()); });
    }
    throw std::invalid_argument("cannot generate a term of type " + t.str());
  }

  std::mt19937_64 rng_;
  std::vector<FreeVar> scope_;
  std::uint64_t counter_ = 0;
};

}  // namespace

TermRef gen_typed_term(std::uint64_t seed, std::uint32_t depth, const Type& target) {
  return Gen(seed, {}).term(depth, target);
}

TermRef gen_open_term(std::uint64_t seed, std::uint32_t depth, const std::vector<FreeVar>& free,
                      const Type& target) {
  return Gen(seed, free).term(depth, target);
}

Type gen_type(std::uint64_t seed, std::uint32_t depth) { return Gen(seed, {}).type(depth); }

Value gen_value(std::uint64_t seed, const Type& t) { return Gen(seed, {}).value(t); }

}  // namespace arrc
