#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <memory>

#include "arrc/pipeline.h"
#include "testkit.h"

using namespace arrc;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

// Runs arrc with the given arguments; stderr is folded into `out`.
CliRun arrc_cli(const std::string& args) {
  std::string cmd = std::string(ARRC_BIN) + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string prog(const char* name) { return testkit::program_path(name); }

}  // namespace

TEST(Pipeline, StageOrder) {
  Compiled c = compile(testkit::read_program("dense.arr"), {});
  std::vector<std::string> names;
  for (const auto& s : c.stages) names.push_back(s.name);
  EXPECT_EQ(names, (std::vector<std::string>{"lower", "canon", "licm", "cse", "dce"}));
}

TEST(Pipeline, StatsLine) {
  Compiled c = testkit::compile_raw(testkit::read_program("dense.arr"));
  EXPECT_EQ(stats_line("lower", *c.stage("lower")),
            "stage=lower bindings=11 arity0=1 arity1=6 arity2+=4");
}

TEST(Pipeline, BlackScholesCounts) {
  std::string src = testkit::read_program("blackscholes.arr");
  Compiled full = compile(src, {{"n", 1}});
  PipelineOptions no_cse;
  no_cse.cse = false;
  Compiled partial = compile(src, {{"n", 1}}, no_cse);
  EXPECT_EQ(full.final_program().bindings.size(), 21u);
  EXPECT_EQ(partial.final_program().bindings.size(), 52u);
}

TEST(Pipeline, BlackScholesAgreesAcrossLevels) {
  Compiled c = compile(testkit::read_program("blackscholes.arr"), {{"n", 3}});
  Type arr = Type::array(3, Type::flt());
  ValueEnv args{{"arr", parse_value("[0.5, 1, 2.25]", arr)}};
  std::vector<Value> vs = testkit::eval_all_levels(c, args);
  for (const auto& v : vs) EXPECT_TRUE(values_agree(v, vs[0])) << v.str();
  for (const auto& s : c.stages) {
    EXPECT_TRUE(values_agree(ainf::ainf_eval(s.program, args), vs[0])) << s.name;
  }
  // Put-call parity with S = K = r = 1: C - P = 1 - exp(-T).
  for (std::size_t k = 0; k < 3; ++k) {
    const Value& e = vs[0].elems()[k];
    double T = args.at("arr").elems()[k].as_flt();
    EXPECT_NEAR(e.first().as_flt() - e.second().as_flt(), 1.0 - std::exp(-T), 1e-12);
  }
}

TEST(Pipeline, TableOneOracles) { EXPECT_EQ(testkit::check_table1(1), ""); }

TEST(Cli, Check) {
  CliRun r = arrc_cli("check " + prog("dense.arr") + " --size n=2 --size m=3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "dense : 2 => flt\n");
}

TEST(Cli, Diagnostics) {
  CliRun bad = arrc_cli("check " + prog("dense.arr") + " --size n=0 --size m=3 --size q=1");
  EXPECT_EQ(bad.status, 1);
  std::string tmp = testing::TempDir() + "/ill.arr";
  FILE* f = fopen(tmp.c_str(), "w");
  fputs("size n\nf(x: n => flt): flt :=\n  x + 1.0\n", f);
  fclose(f);
  CliRun unbound = arrc_cli("check " + tmp);
  EXPECT_EQ(unbound.status, 1);
  EXPECT_NE(unbound.out.find("unbound size variable n"), std::string::npos) << unbound.out;
  CliRun ill = arrc_cli("check " + tmp + " --size n=2");
  EXPECT_EQ(ill.status, 1);
  EXPECT_EQ(ill.out.rfind(tmp + ":3:3: error: ", 0), 0u) << ill.out;
  EXPECT_EQ(arrc_cli("check /nonexistent.arr").status, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(arrc_cli("").status, 2);
  EXPECT_EQ(arrc_cli("frobnicate x.arr").status, 2);
  EXPECT_EQ(arrc_cli("check " + prog("dense.arr") + " --size n").status, 2);
  EXPECT_EQ(arrc_cli("compile " + prog("dense.arr") + " --dump-stage nope").status, 2);
  EXPECT_EQ(arrc_cli("compile " + prog("dense.arr") + " --no-cse --dump-stage cse").status, 2);
  EXPECT_EQ(arrc_cli("run " + prog("tabulate.arr") + " --level fast").status, 2);
}

TEST(Cli, CompileGoldenDense) {
  CliRun r = arrc_cli("compile " + prog("dense.arr") + " --no-licm --no-cse --no-dce");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("stage=canon bindings=11 arity0=1 arity1=6 arity2+=4"),
            std::string::npos);
  EXPECT_NE(r.out.find("let for i1:2, for i2:3, (x4 : flt := x2 * x3)"), std::string::npos);
}

TEST(Cli, DumpAllStages) {
  CliRun r = arrc_cli("compile " + prog("blackscholes.arr") + " --dump-stage all");
  EXPECT_EQ(r.status, 0);
  for (const char* h : {"-- norm\n", "-- lower\n", "-- canon\n", "-- licm\n", "-- cse\n",
                        "-- dce\n", "-- final\n"}) {
    EXPECT_NE(r.out.find(h), std::string::npos) << h;
  }
  EXPECT_NE(r.out.find("stage=dce bindings=21"), std::string::npos);
}

TEST(Cli, RunTabulateAtEveryLevel) {
  for (const char* level : {"surface", "norm", "ainf", "opt"}) {
    CliRun r = arrc_cli("run " + prog("tabulate.arr") + " --arg none --level " + level);
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "[0, 10, 20]\n") << level;
  }
}

TEST(Cli, RunMatmul) {
  std::string base = "run " + prog("linalg.arr") +
                     " --entry matmul --size m=2 --arg \"A=[[1,2],[3,4]]\" --arg "
                     "\"B=[[5,6],[7,8]]\" --level ";
  CliRun opt = arrc_cli(base + "opt");
  CliRun surface = arrc_cli(base + "surface");
  EXPECT_EQ(opt.status, 0);
  EXPECT_EQ(opt.out, "[[19, 22], [43, 50]]\n");
  EXPECT_EQ(surface.out, opt.out);
}

TEST(Cli, RunArgumentErrors) {
  std::string base = "run " + prog("conv.arr");
  EXPECT_EQ(arrc_cli(base + " --arg x=[1,2,3]").status, 1);
  EXPECT_EQ(arrc_cli(base + " --arg x=[1,2] --arg y=[1,0,0,0]").status, 1);
  EXPECT_EQ(arrc_cli(base + " --arg x=[1,2,3] --arg y=[1,0,0,0] --arg z=1").status, 1);
  CliRun ok = arrc_cli(base + " --arg x=[1,2,3] --arg y=[1,0,0,0]");
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(ok.out, "[1, 0]\n");
}

TEST(Cli, Deterministic) {
  std::string cmd = "compile " + prog("blackscholes.arr") + " --dump-stage all";
  EXPECT_EQ(arrc_cli(cmd).out, arrc_cli(cmd).out);
}
