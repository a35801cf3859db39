#pragma once

#include <vector>

#include "arrc/ainf.h"
#include "arrc/typed_term.h"

namespace arrc::lower {

// Fission translation into A-iNF with smart binding. `params` are the free
// typed names of `e`. Variables are named x0, x1, ... and indices i1, i2, ...
// (skipping any name taken by a parameter).
ainf::Program to_ainf(const TypedTerm& e, const std::vector<ainf::Param>& params = {});

}  // namespace arrc::lower
