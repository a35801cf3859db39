#include <gtest/gtest.h>

#include "arrc/opt.h"
#include "arrc/pipeline.h"
#include "testkit.h"

using namespace arrc;
using namespace arrc::ainf;

namespace {

using Renaming = std::vector<std::pair<std::string, std::string>>;

std::string var_names(const Program& a) {
  std::string out;
  for (const auto& b : a.bindings) out += b.var + " ";
  return out;
}

}  // namespace

TEST(Cse, ChainWithRenaming) {
  opt::CseResult r = opt::cse_with_renaming(parse_ainf(R"(param v : flt
param one : flt
let (x : flt := sqrt v)
let (y : flt := sqrt v)
let (z : flt := x + y)
let (q : flt := y + x)
let (t : flt := z + one)
let (r : flt := q + one)
r
)"));
  EXPECT_EQ(var_names(r.program), "x z t ");
  EXPECT_EQ(r.renamed, (Renaming{{"y", "x"}, {"q", "z"}, {"r", "t"}}));
  EXPECT_EQ(print_prim(r.program.bindings[1].prim, Type::flt()), "x + x");
  EXPECT_EQ(r.program.result.name, "t");
}

TEST(Cse, NoDuplicatesUnchanged) {
  Compiled c = testkit::compile_raw(testkit::read_program("conv.arr"));
  const Program& a = c.final_program();
  EXPECT_EQ(pretty(opt::cse(a)), pretty(a));
}

TEST(Cse, AcrossLoopBoundaryAfterLicm) {
  Program a = parse_ainf(R"(param x : flt
let for i:3, (one : flt := 1.000000)
let for i:3, (y : flt := x + one)
let for i:3, (two : flt := 2.000000)
let for i:3, (y2 : flt := two * y)
let (f : 3 => flt := for i:3. y2)
let (one2 : flt := 1.000000)
let (z : flt := x + one2)
let (r : (3 => flt, flt) := (f, z))
r
)");
  // Without LICM the loop-bound y and the top-level z differ in Env.
  EXPECT_TRUE(opt::cse_with_renaming(a).renamed.empty());
  opt::CseResult r = opt::cse_with_renaming(opt::licm(a));
  EXPECT_EQ(r.renamed, (Renaming{{"one2", "one"}, {"z", "y"}}));
  EXPECT_TRUE(validate(r.program).empty());
  EXPECT_EQ(pretty(r.program).find("(r : (3 => flt, flt) := (f, y))") != std::string::npos, true);
}

TEST(Cse, LiteralsOfDifferentTypeStayApart) {
  Program a = parse_ainf("let (a : fin 2 := 1)\nlet (b : fin 3 := 1)\nlet (c : (fin 2, fin 3) := (a, b))\nc\n");
  EXPECT_EQ(opt::cse(a).bindings.size(), 3u);
}

TEST(Licm, DropsUnusedIndex) {
  Program a = parse_ainf(R"(param xs : 3 => flt
let for i:3, (ys : flt := 1.000000)
let for i:3, (a : flt := xs[i])
let for i:3, (b : flt := a + ys)
let (zs : 3 => flt := for i:3. b)
zs
)");
  Program out = opt::licm(a);
  EXPECT_TRUE(out.bindings[0].env.empty());
  for (std::size_t k = 1; k < 3; ++k) EXPECT_EQ(out.bindings[k].env, a.bindings[k].env);
  EXPECT_TRUE(validate(out).empty());
  EXPECT_TRUE(opt::licm_minimal(out));
  EXPECT_FALSE(opt::licm_minimal(a));
}

TEST(Licm, HoistsDenseZero) {
  Compiled c = compile(testkit::read_program("dense.arr"), {});
  const Program& a = *c.stage("licm");
  ASSERT_EQ(a.bindings[0].var, "x0");
  EXPECT_TRUE(a.bindings[0].env.empty());
  // W[i1] does not depend on the inner index either.
  EXPECT_EQ(a.bindings[1].env.size(), 1u);
  EXPECT_EQ(a.bindings[2].env.size(), 2u);
}

TEST(Licm, KeepsIndexUsedByCondition) {
  Program a = parse_ainf(R"(param c : 3 => fin 2
let for i:3, (b : fin 2 := c[i])
let for i:3, if b!=0, (t : flt := 1.000000)
let for i:3, if b=0, (f : flt := 2.000000)
let for i:3, (r : flt := ite b t f)
let (z : 3 => flt := for i:3. r)
z
)");
  Program out = opt::licm(a);
  EXPECT_EQ(pretty(out), pretty(a));
}

TEST(Canon, SharesIndicesAcrossLoops) {
  Program a = parse_ainf(R"(let for a:2, (u : fin 2 := a)
let (v : 2 => fin 2 := for a:2. u)
let for b:2, (w : fin 2 := b)
let (z : 2 => fin 2 := for b:2. w)
let for c:3, (s : fin 3 := c)
let (y : 3 => fin 3 := for c:3. s)
let (p : (2 => fin 2, 3 => fin 3) := (z, y))
p
)");
  Program c = opt::canon_env(a);
  EXPECT_EQ(c.bindings[0].env[0].index, c.bindings[2].env[0].index);
  EXPECT_NE(c.bindings[0].env[0].index, c.bindings[4].env[0].index);
  EXPECT_EQ(pretty(opt::canon_env(c)), pretty(c));
  EXPECT_TRUE(validate(c).empty());
  // Now the two loops are duplicates.
  EXPECT_EQ(opt::cse(c).bindings.size(), 5u);
}

TEST(Canon, SwapsNestedIndices) {
  Program a = parse_ainf(R"(let for i2:2, for i1:3, (u : fin 4 := i2 + i1)
let for i2:2, (v : 3 => fin 4 := for i1:3. u)
let (w : 2 => 3 => fin 4 := for i2:2. v)
w
)");
  Program c = opt::canon_env(a);
  EXPECT_TRUE(validate(c).empty());
  EXPECT_EQ(print_prim(c.bindings[0].prim, Type::fin(4)), "i1 + i2");
  EXPECT_TRUE(values_agree(ainf_eval(c, {}), ainf_eval(a, {})));
}

TEST(Dce, PairComponentChainRemoved) {
  Program a = parse_ainf(R"(param xs : 3 => flt
let for i:3, (a : flt := xs[i])
let for i:3, (ys : flt := exp a)
let for i:3, (zs : flt := sqrt a)
let for i:3, (x : (flt, flt) := (ys, zs))
let (z : 3 => flt := for i:3. ys)
z
)");
  Program out = opt::dce(a);
  EXPECT_EQ(var_names(out), "a ys z ");
  EXPECT_TRUE(validate(out).empty());
}

TEST(Dce, PairProgramEndToEnd) {
  Compiled c = compile(R"(f(xs: 3 => flt): 3 => flt :=
  let x: 3 => (flt, flt) := for i. (exp xs[i], sqrt xs[i])
  for i. fst x[i]
)",
                       {});
  std::string text = pretty(c.final_program());
  EXPECT_EQ(text.find("sqrt"), std::string::npos);
  EXPECT_EQ(c.final_program().bindings.size(), 3u);
}

TEST(Dce, FixpointAndTail) {
  Program live = parse_ainf("param v : flt\nlet (a : flt := exp v)\nlet (b : flt := a + a)\nb\n");
  EXPECT_EQ(pretty(opt::dce(live)), pretty(live));
  Program tail = parse_ainf("param v : flt\nlet (a : flt := exp v)\nlet (b : flt := a + a)\na\n");
  EXPECT_EQ(var_names(opt::dce(tail)), "a ");
}

TEST(Dce, KeepsConditionVariables) {
  Program a = parse_ainf(R"(param c : 2 => fin 2
let (k : fin 2 := 0)
let (d : fin 2 := c[k])
let if d!=0, (xt : flt := 1.000000)
let if d=0, (xf : flt := 2.000000)
let (z : flt := ite d xt xf)
z
)");
  EXPECT_EQ(opt::dce(a).bindings.size(), 5u);
}

TEST(Passes, Idempotent) {
  for (const char* f : {"dense.arr", "conv.arr", "blackscholes.arr", "linalg.arr"}) {
    Compiled c = compile(testkit::read_program(f), {});
    const Program& a = *c.stage("canon");
    EXPECT_EQ(pretty(opt::licm(opt::licm(a))), pretty(opt::licm(a))) << f;
    EXPECT_EQ(pretty(opt::cse(opt::cse(a))), pretty(opt::cse(a))) << f;
    EXPECT_EQ(pretty(opt::dce(opt::dce(a))), pretty(opt::dce(a))) << f;
    EXPECT_TRUE(opt::cse_unique(*c.stage("cse"))) << f;
  }
}

TEST(Ren, Transitive) {
  opt::Ren r;
  r.add(VPar::var("b", Type::flt()), VPar::var("a", Type::flt()));
  r.add(VPar::var("c", Type::flt()), VPar::var("b", Type::flt()));
  EXPECT_EQ(r(VPar::var("c", Type::flt())).name, "a");
  EXPECT_EQ(r(VPar::idx("c", Type::fin(2))).name, "c");
}
