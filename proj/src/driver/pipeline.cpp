#include "arrc/pipeline.h"

#include <fmt/format.h>

#include "arrc/diagnostics.h"
#include "arrc/lower.h"
#include "arrc/opt.h"
#include "arrc/types.h"

namespace arrc {

const ainf::Program* Compiled::stage(std::string_view name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s.program;
  }
  return nullptr;
}

Frontend compile_frontend(std::string_view source, const syntax::SizeEnv& sizes,
                          std::optional<std::string> entry) {
  syntax::SurfaceProgram program = syntax::parse_program(source);
  syntax::SizeEnv resolved = syntax::resolve_sizes(program, sizes);
  syntax::Desugared d = syntax::desugar(program, resolved, std::move(entry));
  Checker checker(resolved);
  TermRef typed = checker.check(Ctx{}, *d.term, resolve_type(d.type, resolved));

  Frontend f;
  f.entry = d.entry;
  f.ret = resolve_type(d.ret, resolved);
  for (const auto& p : d.params) {
    if (typed->kind != TypedTerm::Kind::Fun) throw InternalError("entry lost a parameter binder");
    f.params.push_back({p.name, typed->binder_type});
    typed = typed->args[0];
  }
  f.body = typed;
  return f;
}

Compiled compile_backend(Frontend front, const PipelineOptions& opts) {
  Compiled c;
  c.front = std::move(front);
  c.normalized = nbe::normalize(*c.front.body, c.front.params, opts.nbe);

  std::vector<ainf::Param> params;
  for (const auto& p : c.front.params) params.push_back({p.name, p.type});
  c.stages.push_back({"lower", lower::to_ainf(*c.normalized, params)});
  c.stages.push_back({"canon", opt::canon_env(c.stages.back().program)});
  if (opts.licm) c.stages.push_back({"licm", opt::licm(c.stages.back().program)});
  if (opts.cse) c.stages.push_back({"cse", opt::cse(c.stages.back().program)});
  if (opts.dce) c.stages.push_back({"dce", opt::dce(c.stages.back().program)});
  return c;
}

Compiled compile(std::string_view source, const syntax::SizeEnv& sizes,
                 const PipelineOptions& opts, std::optional<std::string> entry) {
  return compile_backend(compile_frontend(source, sizes, std::move(entry)), opts);
}

Value eval_surface(const Frontend& f, const ValueEnv& args) { return eval_term(args, *f.body); }

Value eval_normalized(const Compiled& c, const ValueEnv& args) {
  return eval_term(args, *c.normalized);
}

std::string stats_line(const std::string& stage, const ainf::Program& a) {
  ainf::Stats s = ainf::stats(a);
  auto at = [&](std::size_t k) {
    auto it = s.arity.find(k);
    return it == s.arity.end() ? std::size_t{0} : it->second;
  };
  return fmt::format("stage={} bindings={} arity0={} arity1={} arity2+={}", stage, s.bindings,
                     at(0), at(1), s.arity_at_least(2));
}

}  // namespace arrc
