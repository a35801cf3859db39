#include <gtest/gtest.h>

#include "arrc/ainf.h"
#include "arrc/pipeline.h"
#include "testkit.h"

using namespace arrc;
using namespace arrc::ainf;

namespace {

const char* kBranches = R"(param c : 3 => fin 2
let for i:3, (b : fin 2 := c[i])
let for i:3, if b!=0, (t : flt := 1.000000)
let for i:3, if b=0, (f : flt := 2.000000)
let for i:3, (r : flt := ite b t f)
let (z : 3 => flt := for i:3. r)
z
)";

Value vec(std::vector<double> xs) {
  std::vector<Value> out;
  for (double x : xs) out.push_back(Value::flt(x));
  return Value::arr(std::move(out));
}

}  // namespace

TEST(Validate, DenseListingIsWellFormed) {
  Compiled c = testkit::compile_raw(testkit::read_program("dense.arr"));
  EXPECT_TRUE(validate(*c.stage("lower")).empty());
  EXPECT_TRUE(maximally_fissioned(*c.stage("lower")));
}

TEST(Validate, EnvMismatch) {
  Program a = parse_ainf(R"(param x : 3 => flt
let for i:3, (y : flt := x[i])
let (z : flt := y + y)
z
)");
  auto d = validate(a);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d.front().binding, 1u);
}

TEST(Validate, IteReadsConditionalVariables) {
  Program a = parse_ainf(R"(param c : fin 2
let if c!=0, (xt : flt := 1.000000)
let if c=0, (xf : flt := 2.000000)
let (z : flt := ite c xt xf)
z
)");
  EXPECT_TRUE(validate(a).empty());
  // Swapped branches break the rule.
  a.bindings[2].prim.operands = {a.bindings[2].prim.operands[0], VPar::var("xf", Type::flt()),
                                 VPar::var("xt", Type::flt())};
  EXPECT_FALSE(validate(a).empty());
}

TEST(Validate, TypeMismatch) {
  Program a = parse_ainf("param x : 3 => flt\nlet (k : fin 3 := 0)\nlet (y : fin 2 := x[k])\ny\n");
  EXPECT_FALSE(validate(a).empty());
}

TEST(Eval, SingleBinding) {
  EXPECT_EQ(ainf_eval(parse_ainf("let (x : flt := 2.000000)\nx\n"), {}).as_flt(), 2.0);
}

TEST(Eval, DenseOneByOne) {
  Compiled c = compile(testkit::read_program("dense.arr"), {{"n", 1}, {"m", 1}});
  ValueEnv args{{"b", vec({0})}, {"W", Value::arr({vec({2})})}, {"x", vec({3})}};
  // max(0, 2*3 + 0)
  EXPECT_EQ(ainf_eval(c.final_program(), args).str(), "[6]");
  EXPECT_EQ(ainf_eval(*c.stage("lower"), args).str(), "[6]");
}

TEST(Eval, ConvAgainstSlidingDot) {
  std::vector<double> x{1, 2, 3}, y{1, 0, 0, 0};
  std::vector<double> oracle(2, 0.0);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) oracle[i] += x[j] * y[j + i];
  }
  Compiled c = compile(testkit::read_program("conv.arr"), {{"n", 3}, {"m", 2}});
  ValueEnv args{{"x", vec(x)}, {"y", vec(y)}};
  EXPECT_TRUE(values_agree(ainf_eval(c.final_program(), args), vec(oracle)));
  EXPECT_EQ(ainf_eval(c.final_program(), args).str(), "[1, 0]");
}

TEST(Eval, BranchesOnlyWhereConditionHolds) {
  Program a = parse_ainf(kBranches);
  ASSERT_TRUE(validate(a).empty());
  Type cond = Type::array(3, Type::fin(2));
  ainf::EvalCounters n;
  Value v = ainf_eval(a, {{"c", parse_value("[1, 0, 1]", cond)}}, &n);
  EXPECT_EQ(v.str(), "[1, 2, 1]");
  EXPECT_EQ(n.per_binding["t"], 2u);
  EXPECT_EQ(n.per_binding["f"], 1u);
  EXPECT_EQ(n.per_binding["r"], 3u);
}

TEST(Print, DenseListing) {
  Compiled c = testkit::compile_raw(testkit::read_program("dense.arr"));
  std::string text = pretty(c.final_program());
  EXPECT_NE(text.find("let for i1:2, for i2:3, (x4 : flt := x2 * x3)\n"), std::string::npos);
  EXPECT_NE(text.find("let for i1:2, (x0 : flt := 0.000000)\n"), std::string::npos);
  EXPECT_TRUE(text.ends_with("let (x10 : 2 => flt := for i1:2. x9)\nx10\n"));
}

TEST(Print, RoundTrip) {
  for (const char* f : {"dense.arr", "conv.arr", "blackscholes.arr", "linalg.arr"}) {
    Compiled c = compile(testkit::read_program(f), {});
    for (const auto& s : c.stages) {
      Program back = parse_ainf(pretty(s.program));
      EXPECT_EQ(pretty(back), pretty(s.program)) << f << " " << s.name;
      EXPECT_TRUE(validate(back).empty()) << f << " " << s.name;
      EXPECT_TRUE(alpha_equivalent(back, s.program)) << f << " " << s.name;
    }
  }
  EXPECT_EQ(pretty(parse_ainf(kBranches)), kBranches);
}

TEST(Print, Records) {
  Program a = parse_ainf("let for i:2, (x : flt := 0.100000)\nx\n");
  a.bindings[0].prim.constant.flt = 0.1;
  EXPECT_EQ(dump_records(a), "for i:2\tx\tflt\t0.1\n");
}

TEST(Stats, Dense) {
  Compiled c = testkit::compile_raw(testkit::read_program("dense.arr"));
  Stats s = stats(c.final_program());
  EXPECT_EQ(s.bindings, 11u);
  EXPECT_EQ(s.arity[0], 1u);
  EXPECT_EQ(s.arity[1], 6u);
  EXPECT_EQ(s.arity[2], 4u);
  EXPECT_EQ(s.arity_at_least(1), 10u);
}

TEST(Alpha, RenamingAndMismatch) {
  Program a = parse_ainf("let for i:2, (x : fin 2 := i)\nlet (y : 2 => fin 2 := for i:2. x)\ny\n");
  Program b = parse_ainf("let for k:2, (u : fin 2 := k)\nlet (v : 2 => fin 2 := for k:2. u)\nv\n");
  Program c = parse_ainf("let for k:2, (u : fin 2 := k)\nlet (v : 2 => fin 2 := for k:2. u)\nu\n");
  EXPECT_TRUE(alpha_equivalent(a, b));
  EXPECT_FALSE(alpha_equivalent(a, c));
}
