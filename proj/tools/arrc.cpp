// arrc: command-line driver for the array compiler.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "arrc/diagnostics.h"
#include "arrc/pipeline.h"

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::vector<std::string> sizes;
  std::vector<std::string> args;
  std::string entry;
  bool no_licm = false;
  bool no_cse = false;
  bool no_dce = false;
  bool no_fold = false;
  std::vector<std::string> dump;
  std::string level = "opt";
};

std::pair<std::string, std::string> split_binding(const std::string& text, const char* flag) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError(fmt::format("{} expects NAME=VALUE, got '{}'", flag, text));
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

arrc::syntax::SizeEnv parse_sizes(const Options& o) {
  arrc::syntax::SizeEnv env;
  for (const auto& s : o.sizes) {
    auto [name, value] = split_binding(s, "--size");
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw UsageError(fmt::format("--size {}: '{}' is not a natural number", name, value));
    }
    env.insert_or_assign(name, n);
  }
  return env;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw arrc::CompileError({}, fmt::format("cannot read {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

arrc::Frontend frontend(const Options& o) {
  std::string source = read_file(o.file);
  std::optional<std::string> entry;
  if (!o.entry.empty()) entry = o.entry;
  return arrc::compile_frontend(source, parse_sizes(o), entry);
}

arrc::PipelineOptions pipeline_options(const Options& o) {
  arrc::PipelineOptions p;
  p.licm = !o.no_licm;
  p.cse = !o.no_cse;
  p.dce = !o.no_dce;
  p.nbe.fold_floats = !o.no_fold;
  p.nbe.identities = !o.no_fold;
  return p;
}

int cmd_check(const Options& o) {
  arrc::Frontend f = frontend(o);
  fmt::print("{} : {}\n", f.entry, f.ret.str());
  return kOk;
}

int cmd_compile(const Options& o) {
  static const std::vector<std::string> known = {"norm", "lower", "canon", "licm", "cse", "dce"};
  for (const auto& d : o.dump) {
    if (d != "all" && std::find(known.begin(), known.end(), d) == known.end()) {
      throw UsageError(fmt::format("unknown stage '{}'", d));
    }
  }
  arrc::Compiled c = arrc::compile_backend(frontend(o), pipeline_options(o));
  auto wanted = [&](const std::string& name) {
    return std::find(o.dump.begin(), o.dump.end(), name) != o.dump.end() ||
           std::find(o.dump.begin(), o.dump.end(), "all") != o.dump.end();
  };
  for (const auto& d : o.dump) {
    if (d != "all" && d != "norm" && !c.stage(d)) {
      throw UsageError(fmt::format("stage '{}' is disabled", d));
    }
  }
  if (wanted("norm")) fmt::print("-- norm\n{}\n", arrc::print_term(*c.normalized));
  for (const auto& s : c.stages) {
    if (wanted(s.name)) fmt::print("-- {}\n{}", s.name, arrc::ainf::pretty(s.program));
    std::cerr << arrc::stats_line(s.name, s.program) << "\n";
  }
  if (!o.dump.empty()) fmt::print("-- final\n");
  fmt::print("{}", arrc::ainf::pretty(c.final_program()));
  return kOk;
}

arrc::ValueEnv parse_args(const Options& o, const std::vector<arrc::nbe::Param>& params) {
  arrc::ValueEnv env;
  for (const auto& a : o.args) {
    if (a == "none") continue;
    auto [name, text] = split_binding(a, "--arg");
    auto it = std::find_if(params.begin(), params.end(),
                           [&](const arrc::nbe::Param& p) { return p.name == name; });
    if (it == params.end()) {
      throw arrc::CompileError({}, fmt::format("no parameter named {}", name));
    }
    try {
      env.insert_or_assign(name, arrc::parse_value(text, it->type));
    } catch (const std::invalid_argument& e) {
      throw arrc::CompileError(
          {}, fmt::format("argument {} : {}: {}", name, it->type.str(), e.what()));
    }
  }
  for (const auto& p : params) {
    if (!env.count(p.name)) {
      throw arrc::CompileError({}, fmt::format("missing argument for parameter {}", p.name));
    }
  }
  return env;
}

int cmd_run(const Options& o) {
  arrc::Frontend f = frontend(o);
  arrc::ValueEnv args = parse_args(o, f.params);
  arrc::Value v;
  if (o.level == "surface") {
    v = arrc::eval_surface(f, args);
  } else {
    arrc::Compiled c = arrc::compile_backend(std::move(f), pipeline_options(o));
    if (o.level == "norm") {
      v = arrc::eval_normalized(c, args);
    } else if (o.level == "ainf") {
      v = arrc::ainf::ainf_eval(*c.stage("lower"), args);
    } else {
      v = arrc::ainf::ainf_eval(c.final_program(), args);
    }
  }
  fmt::print("{}\n", v.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arrc: compiler for a small total array language"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "source file (.arr)")->required();
    sub->add_option("--size", o.sizes, "size parameter binding NAME=NAT")->allow_extra_args(false);
    sub->add_option("--entry", o.entry, "entry definition (default: last)");
  };
  auto passes = [&](CLI::App* sub) {
    sub->add_flag("--no-licm", o.no_licm, "disable loop-invariant code motion");
    sub->add_flag("--no-cse", o.no_cse, "disable common subexpression elimination");
    sub->add_flag("--no-dce", o.no_dce, "disable dead-code elimination");
    sub->add_flag("--no-fold", o.no_fold, "disable float folding and identities");
  };

  CLI::App* check = app.add_subcommand("check", "parse, desugar and type-check");
  common(check);
  CLI::App* compile = app.add_subcommand("compile", "compile to A-iNF");
  common(compile);
  passes(compile);
  compile->add_option("--dump-stage", o.dump, "print an intermediate stage (or all)")
      ->allow_extra_args(false);
  CLI::App* run = app.add_subcommand("run", "evaluate the entry at a pipeline level");
  common(run);
  passes(run);
  run->add_option("--arg", o.args, "argument binding NAME=LITERAL")->allow_extra_args(false);
  run->add_option("--level", o.level, "surface, norm, ainf or opt")
      ->check(CLI::IsMember({"surface", "norm", "ainf", "opt"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(o);
    if (compile->parsed()) return cmd_compile(o);
    return cmd_run(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const arrc::CompileError& e) {
    std::cerr << e.format(o.file) << "\n";
    return kDiagnostics;
  }
}
