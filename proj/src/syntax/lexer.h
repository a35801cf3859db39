#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "arrc/diagnostics.h"

namespace arrc::syntax {

struct Token {
  enum class Kind { Ident, Nat, Float, Sym, End };

  Kind kind = Kind::End;
  std::string text;
  std::uint64_t nat = 0;
  double flt = 0.0;
  SourceLoc loc;
  bool line_start = false;  // first token on its line

  bool is(std::string_view sym) const { return kind == Kind::Sym && text == sym; }
  bool is_word(std::string_view w) const { return kind == Kind::Ident && text == w; }
};

// Splits UTF-8 source into tokens. `--` starts a line comment. The Unicode
// spellings `×`, `·`, `⇒`, `→` are accepted for `×`, `*`, `=>`, `->`.
std::vector<Token> lex(std::string_view src);

bool is_keyword(std::string_view word);

}  // namespace arrc::syntax
