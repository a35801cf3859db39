#include "testkit.h"

#include <fmt/format.h>

#include <array>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "arrc/lower.h"
#include "arrc/opt.h"
#include "arrc/types.h"

namespace arrc::testkit {

std::string program_path(const std::string& name) {
  return std::string(ARRC_PROGRAMS_DIR) + "/" + name;
}

std::string read_program(const std::string& name) {
  std::ifstream in(program_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Compiled compile_raw(const std::string& source, const syntax::SizeEnv& sizes) {
  PipelineOptions o;
  o.licm = o.cse = o.dce = false;
  return compile(source, sizes, o);
}

std::vector<Value> eval_all_levels(const Compiled& c, const ValueEnv& args) {
  return {eval_surface(c.front, args), eval_normalized(c, args),
          ainf::ainf_eval(*c.stage("lower"), args), ainf::ainf_eval(c.final_program(), args)};
}

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

void check_stage(const std::string& name, const ainf::Program& a, const Type& target,
                 const ValueEnv& args, const Value& expected) {
  auto diags = ainf::validate(a);
  require(diags.empty(), fmt::format("{}: invalid: {}", name,
                                     diags.empty() ? "" : diags.front().message));
  require(ainf::maximally_fissioned(a), name + ": not maximally fissioned");
  require(a.result.type == target, name + ": result type changed");
  Value v = ainf::ainf_eval(a, args);
  require(values_agree(expected, v),
          fmt::format("{}: {} vs reference {}", name, v.str(), expected.str()));
}

}  // namespace

PropertyOutcome check_generated(std::uint64_t seed, std::uint32_t max_depth) {
  using Clock = std::chrono::steady_clock;
  auto start = Clock::now();
  PropertyOutcome out;

  std::mt19937_64 rng(seed);
  // Mostly deep, open terms: closed ones fold to a literal under NbE.
  std::uint32_t depth = max_depth - static_cast<std::uint32_t>(rng() % std::min(max_depth, 3u));
  std::size_t nfree = rng() % 8 == 0 ? 0 : 1 + rng() % 3;
  std::vector<FreeVar> free;
  std::vector<nbe::Param> nparams;
  std::vector<ainf::Param> aparams;
  ValueEnv args;
  Ctx ctx;
  for (std::size_t k = 0; k < nfree; ++k) {
    std::string name = fmt::format("p{}", k);
    Type t = gen_type(rng(), 3);
    free.push_back({name, t});
    nparams.push_back({name, t});
    aparams.push_back({name, t});
    args.insert_or_assign(name, gen_value(rng(), t));
    ctx.push(name, t);
  }
  Type target = gen_type(rng(), 3);
  TermRef term = gen_open_term(rng(), depth, free, target);

  try {
    // Type preservation of the generator output and of re-checking.
    require(term->type == target, "generated term has the wrong type");
    Checker checker({});
    TermRef rechecked = checker.check(ctx, *forget(*term), target);
    require(structurally_equal(*rechecked, *term), "re-checking changed annotations");

    Value reference = eval_term(args, *term);

    TermRef norm = nbe::normalize(*term, nparams);
    require(norm->type == target, "normalize changed the type");
    require(nbe::is_normal(*norm), "normalize left a redex");
    TermRef norm_checked = checker.check(ctx, *forget(*norm), target);
    require(norm_checked->type == target, "normal form re-checks at another type");
    require(values_agree(reference, eval_term(args, *norm)),
            "eval after normalize disagrees");
    require(alpha_equal(*nbe::normalize(*norm, nparams), *norm), "normalize not idempotent");

    ainf::Program lowered = lower::to_ainf(*norm, aparams);
    check_stage("lower", lowered, target, args, reference);
    ainf::Program canon = opt::canon_env(lowered);
    check_stage("canon", canon, target, args, reference);
    ainf::Program licm = opt::licm(canon);
    check_stage("licm", licm, target, args, reference);
    require(opt::licm_minimal(licm), "licm: not minimal");
    require(ainf::alpha_equivalent(opt::licm(licm), licm), "licm not idempotent");
    ainf::Program cse = opt::cse(licm);
    check_stage("cse", cse, target, args, reference);
    require(opt::cse_unique(cse), "cse: duplicate (env, prim)");
    require(ainf::alpha_equivalent(opt::cse(cse), cse), "cse not idempotent");
    ainf::Program dce = opt::dce(cse);
    check_stage("dce", dce, target, args, reference);
    require(ainf::alpha_equivalent(opt::dce(dce), dce), "dce not idempotent");
    require(canon.bindings.size() <= lowered.bindings.size() &&
                licm.bindings.size() <= canon.bindings.size() &&
                cse.bindings.size() <= licm.bindings.size() &&
                dce.bindings.size() <= cse.bindings.size(),
            "a pass increased the binding count");
    out.bindings = dce.bindings.size();
  } catch (const Failure& f) {
    out.failure = fmt::format("seed {}: {}\n  term: {}", seed, f.what, print_term(*term));
  } catch (const std::exception& e) {
    out.failure = fmt::format("seed {}: exception {}\n  term: {}", seed, e.what(),
                              print_term(*term));
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

// --- Table 1 ----------------------------------------------------------------------

namespace {

using Matrix = std::vector<std::vector<double>>;

Value vec_value(const std::vector<double>& v) {
  std::vector<Value> out;
  for (double x : v) out.push_back(Value::flt(x));
  return Value::arr(std::move(out));
}

Value mat_value(const Matrix& m) {
  std::vector<Value> out;
  for (const auto& row : m) out.push_back(vec_value(row));
  return Value::arr(std::move(out));
}

struct Inputs {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> dist{-4.0, 4.0};

  std::vector<double> vec(std::uint64_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
  }
  Matrix mat(std::uint64_t r, std::uint64_t c) {
    Matrix m(r);
    for (auto& row : m) row = vec(c);
    return m;
  }
};

std::string run_case(const std::string& source, const syntax::SizeEnv& sizes,
                     const std::string& entry, const ValueEnv& args, const Value& oracle) {
  Compiled c = compile(source, sizes, {}, entry);
  static const char* levels[] = {"surface", "norm", "ainf", "opt"};
  std::vector<Value> got = eval_all_levels(c, args);
  for (std::size_t k = 0; k < got.size(); ++k) {
    if (!values_agree(oracle, got[k])) {
      return fmt::format("{} at {} (sizes n={} m={} k={} l={}): {} vs oracle {}", entry,
                         levels[k], sizes.at("n"), sizes.at("m"), sizes.at("k"),
                         sizes.at("l"), got[k].str(), oracle.str());
    }
  }
  return {};
}

}  // namespace

std::string check_table1(std::uint64_t seed) {
  const std::string source = read_program("linalg.arr");
  Inputs in{std::mt19937_64(seed)};
  const std::vector<std::array<std::uint64_t, 4>> shapes = {
      {1, 1, 1, 1}, {2, 3, 2, 2}, {3, 2, 4, 1}, {4, 4, 3, 2}, {2, 1, 1, 4}};

  for (const auto& [n, m, k, l] : shapes) {
    syntax::SizeEnv sizes{{"n", n}, {"m", m}, {"k", k}, {"l", l}};
    std::vector<std::string> errors;
    auto run = [&](const std::string& entry, const ValueEnv& args, const Value& oracle) {
      std::string e = run_case(source, sizes, entry, args, oracle);
      if (!e.empty()) errors.push_back(e);
    };

    auto v = in.vec(n), w = in.vec(n);
    std::vector<double> sum(n), prod(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      sum[i] = v[i] + w[i];
      prod[i] = v[i] * w[i];
    }
    run("vadd", {{"v", vec_value(v)}, {"w", vec_value(w)}}, vec_value(sum));
    run("vmul", {{"v", vec_value(v)}, {"w", vec_value(w)}}, vec_value(prod));

    Matrix A = in.mat(n, m), B = in.mat(n, m), S(n, std::vector<double>(m)), P = S;
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t j = 0; j < m; ++j) {
        S[i][j] = A[i][j] + B[i][j];
        P[i][j] = A[i][j] * B[i][j];
      }
    }
    run("madd", {{"A", mat_value(A)}, {"B", mat_value(B)}}, mat_value(S));
    run("mmul", {{"A", mat_value(A)}, {"B", mat_value(B)}}, mat_value(P));

    Matrix C = in.mat(k, l);
    std::vector<Value> outer;
    for (std::uint64_t i = 0; i < n; ++i) {
      std::vector<Value> row;
      for (std::uint64_t j = 0; j < m; ++j) {
        Matrix block(k, std::vector<double>(l));
        for (std::uint64_t p = 0; p < k; ++p) {
          for (std::uint64_t q = 0; q < l; ++q) block[p][q] = A[i][j] * C[p][q];
        }
        row.push_back(mat_value(block));
      }
      outer.push_back(Value::arr(std::move(row)));
    }
    run("outer", {{"A", mat_value(A)}, {"B", mat_value(C)}}, Value::arr(std::move(outer)));

    Matrix Sq = in.mat(n, n);
    double tr = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) tr += Sq[i][i];
    run("trace", {{"A", mat_value(Sq)}}, Value::flt(tr));

    Matrix T(m, std::vector<double>(n));
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t j = 0; j < m; ++j) T[j][i] = A[i][j];
    }
    run("transpose", {{"A", mat_value(A)}}, mat_value(T));

    Matrix Bm = in.mat(m, k), AB(n, std::vector<double>(k, 0.0));
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t p = 0; p < k; ++p) {
        for (std::uint64_t j = 0; j < m; ++j) AB[i][p] += A[i][j] * Bm[j][p];
      }
    }
    run("matmul", {{"A", mat_value(A)}, {"B", mat_value(Bm)}}, mat_value(AB));

    auto x = in.vec(m);
    std::vector<double> Ax(n, 0.0);
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t j = 0; j < m; ++j) Ax[i] += A[i][j] * x[j];
    }
    run("matvec", {{"A", mat_value(A)}, {"v", vec_value(x)}}, vec_value(Ax));

    if (!errors.empty()) return errors.front();
  }
  return {};
}

}  // namespace arrc::testkit
