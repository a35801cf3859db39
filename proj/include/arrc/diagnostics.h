#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arrc {

struct SourceLoc {
  int line = 0;
  int col = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

// Every frontend failure (lexing, parsing, desugaring, type checking) is
// reported by throwing a CompileError carrying the offending location.
class CompileError : public std::runtime_error {
 public:
  CompileError(SourceLoc loc, std::string msg);

  SourceLoc loc() const { return loc_; }
  const std::string& message() const { return msg_; }

  // `file:line:col: error: <msg>`
  std::string format(std::string_view file) const;

 private:
  SourceLoc loc_;
  std::string msg_;
};

// Raised when an internal invariant is violated (a bug, not a user error).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace arrc
