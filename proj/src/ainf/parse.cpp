#include <fmt/format.h>

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "arrc/ainf.h"

namespace arrc::ainf {

namespace {

struct Tok {
  enum class Kind { Word, Num, Sym, End };
  Kind kind = Kind::End;
  std::string text;
};

std::vector<Tok> tokenize(std::string_view line) {
  std::vector<Tok> out;
  std::size_t k = 0;
  auto at = [&](std::size_t j) { return j < line.size() ? line[j] : '\0'; };
  while (k < line.size()) {
    char c = line[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      continue;
    }
    std::size_t start = k;
    bool neg_number = c == '-' && (std::isdigit(static_cast<unsigned char>(at(k + 1))) ||
                                   line.substr(k + 1, 3) == "inf");
    if (std::isdigit(static_cast<unsigned char>(c)) || neg_number) {
      ++k;
      while (std::isalnum(static_cast<unsigned char>(at(k))) || at(k) == '.' ||
             ((at(k) == '-' || at(k) == '+') && (at(k - 1) == 'e' || at(k - 1) == 'E'))) {
        ++k;
      }
      // A trailing '.' belongs to the for/fun body separator.
      if (line[k - 1] == '.') --k;
      out.push_back({Tok::Kind::Num, std::string(line.substr(start, k - start))});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(at(k))) || at(k) == '_') ++k;
      out.push_back({Tok::Kind::Word, std::string(line.substr(start, k - start))});
      continue;
    }
    static constexpr std::string_view two[] = {":=", "=>", "->", "!="};
    bool matched = false;
    for (auto s : two) {
      if (line.substr(k, 2) == s) {
        out.push_back({Tok::Kind::Sym, std::string(s)});
        k += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    out.push_back({Tok::Kind::Sym, std::string(1, c)});
    ++k;
  }
  out.push_back({Tok::Kind::End, ""});
  return out;
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no,
             std::map<std::string, Type, std::less<>>& vars,
             std::map<std::string, Type, std::less<>>& indices)
      : toks_(tokenize(line)), line_no_(line_no), vars_(vars), indices_(indices) {}

  bool at_end() const { return peek().kind == Tok::Kind::End; }
  const Tok& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool is(std::string_view text) const { return peek().text == text && peek().kind != Tok::Kind::End; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument(fmt::format("line {}: {}", line_no_, msg));
  }

  std::string take() {
    if (at_end()) fail("unexpected end of line");
    return toks_[pos_++].text;
  }
  void expect(std::string_view text) {
    if (!is(text)) fail(fmt::format("expected '{}', found '{}'", text, peek().text));
    ++pos_;
  }
  std::string word() {
    if (peek().kind != Tok::Kind::Word) fail(fmt::format("expected a name, found '{}'", peek().text));
    return take();
  }
  std::uint64_t nat() {
    if (peek().kind != Tok::Kind::Num) fail(fmt::format("expected a number, found '{}'", peek().text));
    return std::stoull(take());
  }

  Type type() {
    Type base = base_type();
    if (is("->")) {
      ++pos_;
      return Type::arrow(base, type());
    }
    return base;
  }

  Type base_type() {
    if (is("flt")) {
      ++pos_;
      return Type::flt();
    }
    if (is("fin")) {
      ++pos_;
      return Type::fin(nat());
    }
    if (peek().kind == Tok::Kind::Num) {
      std::uint64_t n = nat();
      expect("=>");
      return Type::array(n, type());
    }
    if (is("(")) {
      ++pos_;
      Type a = type();
      if (is(",")) {
        ++pos_;
        Type b = type();
        expect(")");
        return Type::prod(a, b);
      }
      expect(")");
      return a;
    }
    fail(fmt::format("expected a type, found '{}'", peek().text));
  }

  VPar operand() {
    std::string name = word();
    return resolve(name);
  }

  VPar resolve(const std::string& name) const {
    if (auto it = vars_.find(name); it != vars_.end()) return VPar::var(name, it->second);
    if (auto it = indices_.find(name); it != indices_.end()) return VPar::idx(name, it->second);
    fail(fmt::format("unknown name {}", name));
  }

  void declare_index(const std::string& i, Type t) { indices_.insert_or_assign(i, std::move(t)); }

  Env env() {
    Env out;
    while (is("for") || is("fun") || is("if")) {
      std::string kw = take();
      if (kw == "for") {
        std::string i = word();
        expect(":");
        std::uint64_t n = nat();
        declare_index(i, Type::fin(n));
        out.push_back(EnvEntry::loop(i, n));
      } else if (kw == "fun") {
        std::string i = word();
        expect(":");
        Type t = type();
        declare_index(i, t);
        out.push_back(EnvEntry::fun(i, t));
      } else {
        VPar c = operand();
        bool truth = is("!=");
        if (!truth && !is("=")) fail("expected '!=' or '=' in condition");
        ++pos_;
        if (take() != "0") fail("conditions compare against 0");
        out.push_back(truth ? EnvEntry::if_true(c) : EnvEntry::if_false(c));
      }
      expect(",");
    }
    return out;
  }

  Prim prim(const Type& result) {
    if (peek().kind == Tok::Kind::Num || is("nan") || is("inf")) {
      std::string lit = take();
      if (result.is(Type::Kind::Fin)) return Prim::constant_app(Constant::nat_lit(std::stoull(lit)), {});
      return Prim::constant_app(Constant::flt_lit(std::stod(lit)), {});
    }
    if (is("for") || is("fun")) {
      bool loop = take() == "for";
      std::string i = word();
      expect(":");
      if (loop) {
        std::uint64_t n = nat();
        declare_index(i, Type::fin(n));
        expect(".");
        return Prim::loop(i, n, operand());
      }
      Type t = type();
      declare_index(i, t);
      expect(".");
      return Prim::fun(i, t, operand());
    }
    if (is("ite")) {
      ++pos_;
      VPar c = operand();
      VPar t = operand();
      return Prim::ite(c, t, operand());
    }
    if (is("(")) {
      ++pos_;
      VPar a = operand();
      expect(",");
      VPar b = operand();
      expect(")");
      return Prim::constant_app(Constant::of(Op::Pair), {a, b});
    }
    std::string head = word();
    static const std::map<std::string, Op, std::less<>> named = {
        {"app", Op::App}, {"fst", Op::Fst},   {"snd", Op::Snd},          {"sum", Op::Sum},
        {"max", Op::Max}, {"log", Op::Log},   {"sqrt", Op::Sqrt},        {"exp", Op::Exp},
        {"normCdf", Op::NormCdf}};
    if (auto it = named.find(head); it != named.end() && !vars_.count(head)) {
      std::vector<VPar> args;
      for (std::size_t k = 0; k < arity(it->second); ++k) args.push_back(operand());
      return Prim::constant_app(Constant::of(it->second), std::move(args));
    }
    VPar a = resolve(head);
    if (is("[")) {
      ++pos_;
      VPar i = operand();
      expect("]");
      return Prim::constant_app(Constant::of(Op::Get), {a, i});
    }
    static const std::map<std::string, Op, std::less<>> infix = {
        {"+", Op::Add}, {"*", Op::Mul}, {"-", Op::Sub}, {"/", Op::Div}};
    if (auto it = infix.find(peek().text); it != infix.end() && peek().kind == Tok::Kind::Sym) {
      ++pos_;
      return Prim::constant_app(Constant::of(it->second), {a, operand()});
    }
    if (a.is_idx()) return Prim::index_ref(a.name);
    fail(fmt::format("cannot parse primitive starting at {}", head));
  }

 private:
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
  std::map<std::string, Type, std::less<>>& vars_;
  std::map<std::string, Type, std::less<>>& indices_;
};

}  // namespace

Program parse_ainf(std::string_view text) {
  Program out;
  std::map<std::string, Type, std::less<>> vars;
  std::map<std::string, Type, std::less<>> indices;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_result = false;
  while (std::getline(in, line)) {
    ++line_no;
    LineParser p(line, line_no, vars, indices);
    if (p.at_end()) continue;
    if (have_result) p.fail("text after the result line");
    if (p.is("param")) {
      p.take();
      std::string name = p.word();
      p.expect(":");
      Type t = p.type();
      vars.insert_or_assign(name, t);
      out.params.push_back({name, t});
    } else if (p.is("let")) {
      p.take();
      Binding b;
      b.env = p.env();
      p.expect("(");
      b.var = p.word();
      p.expect(":");
      b.type = p.type();
      p.expect(":=");
      b.prim = p.prim(b.type);
      p.expect(")");
      vars.insert_or_assign(b.var, b.type);
      out.bindings.push_back(std::move(b));
    } else {
      out.result = p.operand();
      have_result = true;
    }
    if (!p.at_end()) p.fail(fmt::format("trailing '{}'", p.peek().text));
  }
  if (!have_result) throw std::invalid_argument("missing result line");
  return out;
}

}  // namespace arrc::ainf
