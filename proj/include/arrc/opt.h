#pragma once

// A-iNF optimization passes.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arrc/ainf.h"

namespace arrc::opt {

// Type-respecting renaming of variables and indices. Targets are never
// themselves renamed, so one lookup resolves a name completely.
class Ren {
 public:
  void add(const ainf::VPar& from, const ainf::VPar& to);
  ainf::VPar operator()(const ainf::VPar& v) const;
  ainf::Env operator()(const ainf::Env& env) const;
  ainf::Prim operator()(const ainf::Prim& p) const;

  bool empty() const { return map_.empty(); }
  // Resolved target of a variable name, if renamed.
  const ainf::VPar* find_var(std::string_view name) const;

 private:
  // Keyed by kind tag + name.
  std::map<std::string, ainf::VPar, std::less<>> map_;
};

// Memo of already emitted (Env, type, Prim) triples.
class NamingTable {
 public:
  const ainf::VPar* lookup(const ainf::Env& env, const Type& t, const ainf::Prim& p) const;
  void record(const ainf::Env& env, const Type& t, const ainf::Prim& p, ainf::VPar var);
  std::size_t size() const { return entries_.size(); }

 private:
  static std::string key(const ainf::Env& env, const Type& t, const ainf::Prim& p);

  std::vector<std::pair<std::string, ainf::VPar>> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Renames loop indices by (position among the Env's loop entries, bound), so
// that loops over the same bound at the same depth share index names.
// Expects binder Envs to be prefixes of use Envs, as lowering produces.
ainf::Program canon_env(const ainf::Program& a);

// Drops loop entries whose index is unused by the prim, by the binder Envs of
// its operands, and by the binder Envs of its if-entry conditions.
ainf::Program licm(const ainf::Program& a);

struct CseResult {
  ainf::Program program;
  // Eliminated variable -> surviving variable.
  std::vector<std::pair<std::string, std::string>> renamed;
};

// Single traversal carrying a renaming and a naming table.
CseResult cse_with_renaming(const ainf::Program& a);
ainf::Program cse(const ainf::Program& a);

// Backward liveness from the result through operands and if-conditions.
ainf::Program dce(const ainf::Program& a);

// Every remaining loop index is used by the prim, an operand's binder Env or
// a condition's binder Env.
bool licm_minimal(const ainf::Program& a);

// No two bindings share (Env, type, Prim).
bool cse_unique(const ainf::Program& a);

}  // namespace arrc::opt
