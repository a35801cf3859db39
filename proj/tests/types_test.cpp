#include <gtest/gtest.h>

#include "arrc/eval.h"
#include "arrc/pipeline.h"
#include "arrc/types.h"
#include "testkit.h"

using namespace arrc;
using syntax::CoreTerm;

namespace {

Type sig(Op op, std::vector<Type> args) { return const_sig(Constant::of(op), args); }

}  // namespace

TEST(ConstSig, Examples) {
  EXPECT_EQ(sig(Op::Add, {Type::fin(4), Type::fin(3)}), Type::fin(6));
  EXPECT_EQ(sig(Op::Mul, {Type::fin(11), Type::fin(3)}), Type::fin(21));
  EXPECT_EQ(sig(Op::Get, {Type::array(5, Type::flt()), Type::fin(5)}), Type::flt());
  EXPECT_EQ(sig(Op::Sum, {Type::array(2, Type::flt())}), Type::flt());
  EXPECT_EQ(sig(Op::Pair, {Type::flt(), Type::fin(2)}), Type::prod(Type::flt(), Type::fin(2)));
  EXPECT_EQ(sig(Op::App, {Type::arrow(Type::fin(2), Type::flt()), Type::fin(2)}), Type::flt());
  EXPECT_EQ(sig(Op::NormCdf, {Type::flt()}), Type::flt());
}

TEST(ConstSig, Errors) {
  EXPECT_THROW(sig(Op::Fst, {Type::flt()}), std::invalid_argument);
  EXPECT_THROW(sig(Op::Add, {Type::flt()}), std::invalid_argument);
  EXPECT_THROW(sig(Op::Sub, {Type::fin(2), Type::fin(2)}), std::invalid_argument);
  EXPECT_THROW(sig(Op::Get, {Type::array(5, Type::flt()), Type::fin(4)}), std::invalid_argument);
  EXPECT_THROW(sig(Op::Add, {Type::fin(2), Type::flt()}), std::invalid_argument);
}

TEST(Check, TabulateSynthesizes) {
  Frontend f = compile_frontend(testkit::read_program("tabulate.arr"), {});
  EXPECT_EQ(f.body->type, Type::array(3, Type::fin(21)));
  // Synthesis without the declared type gives the same.
  Checker c({});
  auto core = forget(*f.body);
  EXPECT_EQ(c.check(Ctx{}, *core)->type, Type::array(3, Type::fin(21)));
}

TEST(Check, IteConditionMustBeFin2) {
  Ctx ctx;
  ctx.push("c", Type::flt());
  ctx.push("a", Type::flt());
  auto e = CoreTerm::ite(CoreTerm::var("c"), CoreTerm::var("a"), CoreTerm::var("a"));
  EXPECT_THROW(Checker({}).check(ctx, *e), CompileError);
  ctx.push("c", Type::fin(2));
  EXPECT_EQ(Checker({}).check(ctx, *e)->type, Type::flt());
}

TEST(Check, DenseIsArrayOfFlt) {
  Frontend f = compile_frontend(testkit::read_program("dense.arr"), {{"n", 2}, {"m", 3}});
  EXPECT_EQ(f.ret, Type::array(2, Type::flt()));
  EXPECT_EQ(f.body->type, f.ret);
}

TEST(Check, Errors) {
  auto fails = [](const char* src) {
    EXPECT_THROW(compile_frontend(src, {}), CompileError) << src;
  };
  fails("f(x: flt): flt := y");
  fails("f(): fin 3 := 3");
  fails("f(): flt := sum (for i. 1.0)");
  fails("f(): 2 => flt := for i:3. 1.0");
  fails("f(x: flt): flt := x[0]");
  try {
    compile_frontend("f(x: flt):\n  fin 2 := x", {});
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.loc().line, 2);
  }
}

TEST(Check, LiteralBounds) {
  Checker c({});
  auto lit = CoreTerm::constant_app(Constant::nat_lit(2), {});
  EXPECT_EQ(c.check(Ctx{}, *lit)->type, Type::fin(3));
  EXPECT_EQ(c.check(Ctx{}, *lit, Type::fin(7))->type, Type::fin(7));
  EXPECT_EQ(c.check(Ctx{}, *lit, Type::flt())->constant.op, Op::FltLit);
  EXPECT_THROW(c.check(Ctx{}, *lit, Type::fin(2)), CompileError);
}

TEST(Ctx, MostRecentBindingWins) {
  Ctx ctx;
  ctx.push("x", Type::flt());
  ctx.push("x", Type::fin(2));
  EXPECT_EQ(*ctx.lookup("x"), Type::fin(2));
  ctx.pop();
  EXPECT_EQ(*ctx.lookup("x"), Type::flt());
  EXPECT_EQ(ctx.lookup("y"), nullptr);
}

TEST(Check, RecheckReproducesAnnotations) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Type t = gen_type(seed, 3);
    TermRef e = gen_typed_term(seed, 5, t);
    TermRef again = Checker({}).check(Ctx{}, *forget(*e), t);
    ASSERT_TRUE(structurally_equal(*again, *e)) << seed << ": " << print_term(*e);
  }
}

TEST(Check, Weakening) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Type t = gen_type(seed, 3);
    TermRef e = gen_typed_term(seed, 4, t);
    Ctx ctx;
    ctx.push("unused", Type::fin(3));
    TermRef again = Checker({}).check(ctx, *forget(*e), t);
    ASSERT_TRUE(structurally_equal(*again, *e)) << seed;
  }
}
