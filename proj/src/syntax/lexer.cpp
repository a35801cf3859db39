#include "lexer.h"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace arrc::syntax {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}
bool digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_keyword(std::string_view w) {
  static constexpr std::string_view kKeywords[] = {
      "let", "fun", "for", "sum", "if", "then", "else", "size", "flt", "fin",
  };
  for (auto k : kKeywords) {
    if (k == w) return true;
  }
  return false;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;
  bool at_line_start = true;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
        at_line_start = true;
      } else if ((static_cast<unsigned char>(src[pos]) & 0xC0) != 0x80) {
        ++col;  // count code points, not continuation bytes
      }
      ++pos;
    }
  };

  while (pos < src.size()) {
    char c = src[pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (src.substr(pos, 2) == "--") {
      while (pos < src.size() && src[pos] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.loc = {line, col};
    tok.line_start = at_line_start;
    at_line_start = false;
    std::size_t start = pos;

    if (ident_start(c)) {
      while (pos < src.size() && ident_char(src[pos])) advance(1);
      tok.kind = Token::Kind::Ident;
      tok.text = std::string(src.substr(start, pos - start));
    } else if (digit(c)) {
      while (pos < src.size() && digit(src[pos])) advance(1);
      // `x.1.2` is a projection chain; `for i:2. 1.5` is not.
      bool after_dot = !out.empty() && out.back().is(".") && start > 0 && src[start - 1] == '.';
      bool is_float = false;
      if (!after_dot) {
        if (pos + 1 < src.size() && src[pos] == '.' && digit(src[pos + 1])) {
          is_float = true;
          advance(1);
          while (pos < src.size() && digit(src[pos])) advance(1);
        }
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
          std::size_t look = pos + 1;
          if (look < src.size() && (src[look] == '+' || src[look] == '-')) ++look;
          if (look < src.size() && digit(src[look])) {
            is_float = true;
            advance(look - pos);
            while (pos < src.size() && digit(src[pos])) advance(1);
          }
        }
      }
      tok.text = std::string(src.substr(start, pos - start));
      if (is_float) {
        tok.kind = Token::Kind::Float;
        tok.flt = std::strtod(tok.text.c_str(), nullptr);
      } else {
        tok.kind = Token::Kind::Nat;
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.nat);
        if (ec != std::errc()) {
          throw CompileError(tok.loc, fmt::format("natural literal '{}' out of range", tok.text));
        }
      }
    } else {
      static constexpr std::pair<std::string_view, std::string_view> kSyms[] = {
          {":=", ":="}, {"=>", "=>"}, {"->", "->"},
          {"\xC3\x97", "\xC3\x97"},  // ×
          {"\xC2\xB7", "*"},         // ·
          {"\xE2\x87\x92", "=>"},    // ⇒
          {"\xE2\x86\x92", "->"},    // →
          {"(", "("}, {")", ")"}, {"[", "["}, {"]", "]"}, {",", ","}, {".", "."},
          {":", ":"}, {";", ";"}, {"+", "+"}, {"-", "-"}, {"*", "*"}, {"/", "/"},
          {"=", "="},
      };
      bool matched = false;
      for (const auto& [spelling, canon] : kSyms) {
        if (src.substr(pos, spelling.size()) == spelling) {
          tok.kind = Token::Kind::Sym;
          tok.text = std::string(canon);
          advance(spelling.size());
          matched = true;
          break;
        }
      }
      if (!matched) {
        throw CompileError(tok.loc, fmt::format("unexpected character '{}'", c));
      }
    }
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = Token::Kind::End;
  end.loc = {line, col};
  end.line_start = true;
  out.push_back(end);
  return out;
}

}  // namespace arrc::syntax
