#include <gtest/gtest.h>

#include "arrc/syntax.h"
#include "testkit.h"

using namespace arrc;
using namespace arrc::syntax;

namespace {

const CoreTerm& strip_funs(const CoreTerm& t) {
  return t.kind == CoreTerm::Kind::Fun ? strip_funs(*t.args[0]) : t;
}

CoreRef desugar_src(const std::string& src, const SizeEnv& sizes = {}) {
  SurfaceProgram p = parse_program(src);
  return desugar(p, resolve_sizes(p, sizes)).term;
}

}  // namespace

TEST(Parse, MinimalDefinition) {
  SurfaceProgram p = parse_program("f(x: flt): flt := x + 1.0");
  ASSERT_EQ(p.defs.size(), 1u);
  const Expr& body = *p.defs[0].body;
  EXPECT_EQ(body.kind, Expr::Kind::Binary);
  EXPECT_EQ(body.op, '+');
  EXPECT_EQ(body.kids[0]->kind, Expr::Kind::Var);
  EXPECT_EQ(body.kids[0]->name, "x");
  EXPECT_EQ(body.kids[1]->kind, Expr::Kind::Flt);
  EXPECT_EQ(body.kids[1]->flt, 1.0);
}

TEST(Parse, DenseBodyIsForOverMax) {
  SurfaceProgram p = parse_program(testkit::read_program("dense.arr"));
  const Expr& body = *p.defs.back().body;
  ASSERT_EQ(body.kind, Expr::Kind::For);
  EXPECT_EQ(body.kids[0]->kind, Expr::Kind::Call);
  EXPECT_EQ(body.kids[0]->name, "max");
}

TEST(Parse, EmptyLetIsSyntaxError) {
  try {
    parse_program("f(): flt := let x := ; x");
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.loc().line, 1);
    EXPECT_EQ(e.loc().col, 22);
  }
}

TEST(Parse, DuplicateDefinition) {
  EXPECT_THROW(parse_program("f(): flt := 1.0\nf(): flt := 2.0"), CompileError);
}

TEST(Parse, FloatAfterBinderDot) {
  SurfaceProgram p = parse_program("f(x: 2 => (flt, flt)): flt := sum i:2. 1.5 * x[i].1");
  const Expr& body = *p.defs[0].body->kids[0];
  EXPECT_EQ(body.kids[0]->kind, Expr::Kind::Flt);
  EXPECT_EQ(body.kids[1]->kind, Expr::Kind::Proj);
}

TEST(Parse, LexicalError) {
  EXPECT_THROW(parse_program("f(): flt := 1.0 $ 2.0"), CompileError);
}

TEST(Parse, Types) {
  EXPECT_EQ(parse_type("3 => (flt, fin 2)").str(), "3 => (flt, fin 2)");
  EXPECT_EQ(parse_type("flt -> flt -> flt"),
            SurfaceType::arrow(SurfaceType::flt(),
                               SurfaceType::arrow(SurfaceType::flt(), SurfaceType::flt())));
  EXPECT_EQ(parse_type("flt \xC3\x97 flt"), parse_type("(flt, flt)"));
}

TEST(Parse, RoundTripCorpus) {
  for (const char* f :
       {"dense.arr", "conv.arr", "blackscholes.arr", "linalg.arr", "tabulate.arr"}) {
    SurfaceProgram p = parse_program(testkit::read_program(f));
    EXPECT_EQ(parse_program(print_program(p)), p) << f;
  }
}

TEST(Desugar, SumBecomesForUnderSum) {
  CoreRef root = desugar_src("f(v: 3 => flt): flt := sum j:3. v[j]");
  const CoreTerm& t = strip_funs(*root);
  ASSERT_EQ(t.kind, CoreTerm::Kind::Const);
  EXPECT_EQ(t.constant.op, Op::Sum);
  const CoreTerm& loop = *t.args[0];
  ASSERT_EQ(loop.kind, CoreTerm::Kind::For);
  EXPECT_EQ(loop.name, "j");
  EXPECT_EQ(loop.bound->eval({}), 3u);
  EXPECT_EQ(print_core(*loop.args[0]), "(get v j)");
}

TEST(Desugar, MultiSubscript) {
  CoreRef root = desugar_src("f(A: 2 => 2 => flt, i: fin 2, j: fin 2): flt := A[i,j]");
  const CoreTerm& t = strip_funs(*root);
  EXPECT_EQ(print_core(t), "(get (get A i) j)");
}

TEST(Desugar, MultiBinderFor) {
  CoreRef root = desugar_src("f(): 2 => 3 => flt := for i:2, j:3. 1.0");
  const CoreTerm& t = strip_funs(*root);
  ASSERT_EQ(t.kind, CoreTerm::Kind::For);
  EXPECT_EQ(t.args[0]->kind, CoreTerm::Kind::For);
}

TEST(Desugar, BlackScholesInlinesDefinitions) {
  CoreRef t = desugar_src(testkit::read_program("blackscholes.arr"), {{"n", 1}});
  EXPECT_TRUE(is_core_only(*t));
  const CoreTerm& body = strip_funs(*t);
  ASSERT_EQ(body.kind, CoreTerm::Kind::Let);
  EXPECT_EQ(body.name, "calls");
  EXPECT_EQ(body.args[1]->name, "puts");
}

TEST(Desugar, Deterministic) {
  std::string src = testkit::read_program("blackscholes.arr");
  EXPECT_EQ(*desugar_src(src, {{"n", 2}}), *desugar_src(src, {{"n", 2}}));
}

TEST(Desugar, Errors) {
  SurfaceProgram p = parse_program("size n\nf(v: n => flt): flt := sum i:n. v[i]");
  try {
    resolve_sizes(p, {});
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.message(), "unbound size variable n");
  }
  EXPECT_THROW(desugar_src("f(): flt := g(1.0)"), CompileError);
}

TEST(SizeExpr, SubtractionBelowZero) {
  SizeExpr e = SizeExpr::binary(SizeExpr::Kind::Sub, SizeExpr::variable("n"),
                                SizeExpr::literal(3));
  EXPECT_EQ(e.eval({{"n", 4}}), 1u);
  EXPECT_THROW(e.eval({{"n", 2}}), CompileError);
}
