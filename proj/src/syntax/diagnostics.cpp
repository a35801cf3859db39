#include "arrc/diagnostics.h"

#include <fmt/format.h>

namespace arrc {

CompileError::CompileError(SourceLoc loc, std::string msg)
    : std::runtime_error(fmt::format("{}:{}: {}", loc.line, loc.col, msg)),
      loc_(loc),
      msg_(std::move(msg)) {}

std::string CompileError::format(std::string_view file) const {
  if (loc_.line == 0) return fmt::format("{}: error: {}", file, msg_);
  return fmt::format("{}:{}:{}: error: {}", file, loc_.line, loc_.col, msg_);
}

}  // namespace arrc
