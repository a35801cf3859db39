#pragma once

// End-to-end pipeline: parse → desugar → check → normalize → to_ainf →
// canon_env → licm → cse → dce.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arrc/ainf.h"
#include "arrc/eval.h"
#include "arrc/nbe.h"
#include "arrc/syntax.h"
#include "arrc/type.h"
#include "arrc/typed_term.h"

namespace arrc {

struct PipelineOptions {
  bool licm = true;
  bool cse = true;
  bool dce = true;
  nbe::Options nbe;
};

struct Stage {
  std::string name;  // lower, canon, licm, cse, dce
  ainf::Program program;
};

struct Frontend {
  std::string entry;
  std::vector<nbe::Param> params;
  Type ret = Type::flt();
  TermRef body;  // entry body, parameters free
};

struct Compiled {
  Frontend front;
  TermRef normalized;
  std::vector<Stage> stages;

  const ainf::Program& final_program() const { return stages.back().program; }
  const ainf::Program* stage(std::string_view name) const;
};

// Parse, desugar and check. Throws CompileError.
Frontend compile_frontend(std::string_view source, const syntax::SizeEnv& sizes,
                          std::optional<std::string> entry = std::nullopt);

// Runs normalization, lowering and the enabled passes in fixed order.
Compiled compile_backend(Frontend front, const PipelineOptions& opts = {});

Compiled compile(std::string_view source, const syntax::SizeEnv& sizes,
                 const PipelineOptions& opts = {},
                 std::optional<std::string> entry = std::nullopt);

// Runs a program at every stage of the pipeline.
Value eval_surface(const Frontend& f, const ValueEnv& args);
Value eval_normalized(const Compiled& c, const ValueEnv& args);

// `stage=<name> bindings=<k> arity0=<a> arity1=<b> arity2+=<c>`
std::string stats_line(const std::string& stage, const ainf::Program& a);

}  // namespace arrc
