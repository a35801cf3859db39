// Recursive-descent parser for `.arr` sources.
//
// Newlines are insignificant except in two places: a `let` binding's bound
// expression ends at the first token that starts a new line (or at `;`), and
// a token in column 1 always starts a new top-level item. Inside parentheses
// and brackets neither rule applies.

#include <fmt/format.h>

#include <set>
#include <utility>

#include "arrc/syntax.h"
#include "lexer.h"

namespace arrc::syntax {

namespace {

struct Flags {
  bool stop_at_newline = false;
  bool in_group = false;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SurfaceProgram program() {
    SurfaceProgram p;
    std::set<std::string, std::less<>> def_names;
    std::set<std::string, std::less<>> size_names;
    while (!peek().kind_is(Token::Kind::End)) {
      if (peek().is_word("size")) {
        SizeDecl d = size_decl();
        if (!size_names.insert(d.name).second) {
          throw CompileError(d.loc, fmt::format("duplicate size parameter '{}'", d.name));
        }
        p.sizes.push_back(std::move(d));
        continue;
      }
      Definition d = definition();
      if (!def_names.insert(d.name).second) {
        throw CompileError(d.loc, fmt::format("duplicate definition '{}'", d.name));
      }
      p.defs.push_back(std::move(d));
    }
    return p;
  }

  SurfaceType standalone_type() {
    SurfaceType t = type();
    if (!peek().kind_is(Token::Kind::End)) fail("expected end of type");
    return t;
  }

 private:
  struct Peeked {
    const Token& tok;
    bool kind_is(Token::Kind k) const { return tok.kind == k; }
    bool is(std::string_view s) const { return tok.is(s); }
    bool is_word(std::string_view w) const { return tok.is_word(w); }
  };

  Peeked peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return Peeked{toks_[i]};
  }
  const Token& cur() const { return toks_[pos_]; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = cur();
    std::string found = t.kind == Token::Kind::End ? "end of input" : fmt::format("'{}'", t.text);
    throw CompileError(t.loc, fmt::format("syntax error: {}, found {}", msg, found));
  }

  void expect(std::string_view sym) {
    if (!cur().is(sym)) fail(fmt::format("expected '{}'", sym));
    take();
  }

  std::string ident(std::string_view what) {
    if (cur().kind != Token::Kind::Ident || is_keyword(cur().text)) {
      fail(fmt::format("expected {}", what));
    }
    return take().text;
  }

  // Does the current token end the expression being parsed?
  bool at_boundary() const {
    const Token& t = cur();
    if (t.kind == Token::Kind::End) return true;
    if (flags_.in_group || !t.line_start) return false;
    return flags_.stop_at_newline || t.loc.col == 1;
  }

  template <typename F>
  auto with_flags(Flags f, F&& body) {
    Flags saved = flags_;
    flags_ = f;
    struct Restore {
      Flags& target;
      Flags saved;
      ~Restore() { target = saved; }
    } restore{flags_, saved};
    return body();
  }

  // --- items ---------------------------------------------------------------

  SizeDecl size_decl() {
    SizeDecl d;
    d.loc = take().loc;
    d.name = ident("size parameter name");
    if (cur().is("=")) {
      take();
      if (cur().kind != Token::Kind::Nat) fail("expected natural default");
      d.default_value = take().nat;
    }
    if (cur().is(";")) take();
    return d;
  }

  Definition definition() {
    Definition d;
    d.loc = cur().loc;
    d.name = ident("definition name");
    expect("(");
    std::set<std::string, std::less<>> seen;
    if (!cur().is(")")) {
      while (true) {
        Param p;
        p.loc = cur().loc;
        p.name = ident("parameter name");
        expect(":");
        p.type = with_flags(Flags{false, true}, [&] { return type(); });
        if (!seen.insert(p.name).second) {
          throw CompileError(p.loc, fmt::format("duplicate parameter '{}'", p.name));
        }
        d.params.push_back(std::move(p));
        if (cur().is(",")) {
          take();
          continue;
        }
        break;
      }
    }
    expect(")");
    expect(":");
    d.ret = type();
    expect(":=");
    d.body = with_flags(Flags{false, false}, [&] { return expr(); });
    if (!cur().line_start || cur().loc.col != 1) {
      if (cur().kind != Token::Kind::End) fail("expected end of definition");
    }
    return d;
  }

  // --- types and sizes -----------------------------------------------------

  SizeExpr size_expr() {
    SizeExpr l = size_term();
    while (cur().is("+") || cur().is("-")) {
      auto loc = cur().loc;
      auto k = take().text == "+" ? SizeExpr::Kind::Add : SizeExpr::Kind::Sub;
      l = SizeExpr::binary(k, std::move(l), size_term(), loc);
    }
    return l;
  }

  SizeExpr size_term() {
    SizeExpr l = size_atom();
    while (cur().is("*")) {
      auto loc = take().loc;
      l = SizeExpr::binary(SizeExpr::Kind::Mul, std::move(l), size_atom(), loc);
    }
    return l;
  }

  SizeExpr size_atom() {
    const Token& t = cur();
    if (t.kind == Token::Kind::Nat) {
      take();
      return SizeExpr::literal(t.nat, t.loc);
    }
    if (t.kind == Token::Kind::Ident && !is_keyword(t.text)) {
      take();
      return SizeExpr::variable(t.text, t.loc);
    }
    if (t.is("(")) {
      take();
      SizeExpr e = size_expr();
      expect(")");
      return e;
    }
    fail("expected size");
  }

  // type := prod ('->' type)?
  SurfaceType type() {
    auto loc = cur().loc;
    SurfaceType l = prod_type();
    if (cur().is("->")) {
      take();
      return SurfaceType::arrow(std::move(l), type(), loc);
    }
    return l;
  }

  // prod := base ('×' prod)?
  SurfaceType prod_type() {
    auto loc = cur().loc;
    SurfaceType l = base_type();
    if (cur().is("\xC3\x97")) {
      take();
      return SurfaceType::prod(std::move(l), prod_type(), loc);
    }
    return l;
  }

  SurfaceType base_type() {
    const Token& t = cur();
    auto loc = t.loc;
    if (t.is_word("flt")) {
      take();
      return SurfaceType::flt(loc);
    }
    if (t.is_word("fin")) {
      take();
      return SurfaceType::fin(size_atom(), loc);
    }
    // Try `size => type` first; fall back to a parenthesized type.
    std::size_t save = pos_;
    try {
      SizeExpr n = size_expr();
      if (cur().is("=>")) {
        take();
        return SurfaceType::array(std::move(n), type(), loc);
      }
    } catch (const CompileError&) {
    }
    pos_ = save;
    if (t.is("(")) {
      take();
      SurfaceType inner = type();
      if (cur().is(",")) {
        take();
        SurfaceType second = type();
        expect(")");
        return SurfaceType::prod(std::move(inner), std::move(second), loc);
      }
      expect(")");
      return inner;
    }
    fail("expected type");
  }

  // --- expressions ---------------------------------------------------------

  static ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  ExprPtr expr() {
    const Token& t = cur();
    if (t.is_word("let")) return let_expr();
    if (t.is_word("for") || t.is_word("sum")) return binder_expr();
    if (t.is_word("fun")) return fun_expr();
    if (t.is_word("if")) return if_expr();
    return additive();
  }

  ExprPtr let_expr() {
    Expr e;
    e.kind = Expr::Kind::Let;
    e.loc = take().loc;
    e.name = ident("variable name");
    if (cur().is(":")) {
      take();
      e.annot = type();
    }
    expect(":=");
    if (cur().is(";")) fail("expected expression after ':='");
    ExprPtr bound = with_flags(Flags{true, false}, [&] { return expr(); });
    if (cur().kind == Token::Kind::End ||
        (!flags_.in_group && cur().line_start && cur().loc.col == 1)) {
      fail("expected body after let binding");
    }
    if (cur().is(";")) {
      take();
    } else if (!cur().line_start) {
      fail("expected ';' or newline after let binding");
    }
    ExprPtr body = expr();
    e.kids = {std::move(bound), std::move(body)};
    return make(std::move(e));
  }

  std::vector<Binder> index_binders() {
    std::vector<Binder> bs;
    while (true) {
      Binder b;
      b.loc = cur().loc;
      b.name = ident("index name");
      if (cur().is(":")) {
        take();
        b.bound = size_expr();
      }
      bs.push_back(std::move(b));
      if (cur().is(",")) {
        take();
        continue;
      }
      if (cur().kind == Token::Kind::Ident && !is_keyword(cur().text)) continue;
      break;
    }
    expect(".");
    return bs;
  }

  ExprPtr binder_expr() {
    Expr e;
    e.kind = cur().is_word("for") ? Expr::Kind::For : Expr::Kind::Sum;
    e.loc = take().loc;
    e.binders = index_binders();
    e.kids = {expr()};
    return make(std::move(e));
  }

  ExprPtr fun_expr() {
    Expr e;
    e.kind = Expr::Kind::Fun;
    e.loc = take().loc;
    while (true) {
      Binder b;
      b.loc = cur().loc;
      b.name = ident("parameter name");
      expect(":");
      b.type = type();
      e.binders.push_back(std::move(b));
      if (cur().is(",")) {
        take();
        continue;
      }
      break;
    }
    expect(".");
    e.kids = {expr()};
    return make(std::move(e));
  }

  ExprPtr if_expr() {
    Expr e;
    e.kind = Expr::Kind::If;
    e.loc = take().loc;
    ExprPtr c = expr();
    if (!cur().is_word("then")) fail("expected 'then'");
    take();
    ExprPtr a = expr();
    if (!cur().is_word("else")) fail("expected 'else'");
    take();
    ExprPtr b = expr();
    e.kids = {std::move(c), std::move(a), std::move(b)};
    return make(std::move(e));
  }

  static bool starts_prefix_form(const Token& t) {
    return t.is_word("let") || t.is_word("for") || t.is_word("sum") || t.is_word("fun") ||
           t.is_word("if");
  }

  ExprPtr binary(char op, ExprPtr l, ExprPtr r, SourceLoc loc) {
    Expr e;
    e.kind = Expr::Kind::Binary;
    e.op = op;
    e.loc = loc;
    e.kids = {std::move(l), std::move(r)};
    return make(std::move(e));
  }

  ExprPtr additive() {
    ExprPtr l = multiplicative();
    while (!at_boundary() && (cur().is("+") || cur().is("-"))) {
      const Token& op = take();
      ExprPtr r = starts_prefix_form(cur()) ? expr() : multiplicative();
      l = binary(op.text[0], std::move(l), std::move(r), op.loc);
    }
    return l;
  }

  ExprPtr multiplicative() {
    ExprPtr l = application();
    while (!at_boundary() && (cur().is("*") || cur().is("/"))) {
      const Token& op = take();
      ExprPtr r = starts_prefix_form(cur()) ? expr() : application();
      l = binary(op.text[0], std::move(l), std::move(r), op.loc);
    }
    return l;
  }

  // Juxtaposition application of builtins: `sqrt T`, `max a b`, `fst p`.
  ExprPtr application() {
    const Token& t = cur();
    if (starts_prefix_form(t)) return expr();
    if (t.kind != Token::Kind::Ident) return postfix();
    auto op = builtin_by_name(t.text);
    if (!op) return postfix();
    auto loc = take().loc;
    std::size_t n = arity(*op);
    std::vector<ExprPtr> args;
    if (n == 2 && cur().is("(") && !at_boundary()) {
      args = call_args();
      if (args.size() != 2) {
        throw CompileError(loc, fmt::format("'{}' expects 2 arguments", t.text));
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        if (at_boundary()) fail(fmt::format("expected argument to '{}'", t.text));
        args.push_back(postfix());
      }
    }
    Expr e;
    e.loc = loc;
    if (*op == Op::Fst || *op == Op::Snd) {
      e.kind = Expr::Kind::Proj;
      e.proj = *op == Op::Fst ? 1 : 2;
    } else {
      e.kind = Expr::Kind::Call;
      e.name = std::string(op_name(*op));
    }
    e.kids = std::move(args);
    return postfix_tail(make(std::move(e)));
  }

  std::vector<ExprPtr> call_args() {
    expect("(");
    std::vector<ExprPtr> args;
    with_flags(Flags{false, true}, [&] {
      if (!cur().is(")")) {
        args.push_back(expr());
        while (cur().is(",")) {
          take();
          args.push_back(expr());
        }
      }
      return 0;
    });
    expect(")");
    return args;
  }

  ExprPtr postfix() { return postfix_tail(atom()); }

  ExprPtr postfix_tail(ExprPtr e) {
    while (!at_boundary()) {
      if (cur().is("[")) {
        Expr ix;
        ix.kind = Expr::Kind::Index;
        ix.loc = take().loc;
        ix.kids.push_back(std::move(e));
        with_flags(Flags{false, true}, [&] {
          ix.kids.push_back(expr());
          while (cur().is(",")) {
            take();
            ix.kids.push_back(expr());
          }
          return 0;
        });
        expect("]");
        e = make(std::move(ix));
      } else if (cur().is(".") && peek(1).kind_is(Token::Kind::Nat) &&
                 (peek(1).tok.nat == 1 || peek(1).tok.nat == 2)) {
        Expr pr;
        pr.kind = Expr::Kind::Proj;
        pr.loc = take().loc;
        pr.proj = static_cast<int>(take().nat);
        pr.kids.push_back(std::move(e));
        e = make(std::move(pr));
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr atom() {
    const Token& t = cur();
    Expr e;
    e.loc = t.loc;
    switch (t.kind) {
      case Token::Kind::Nat:
        take();
        e.kind = Expr::Kind::Nat;
        e.nat = t.nat;
        return make(std::move(e));
      case Token::Kind::Float:
        take();
        e.kind = Expr::Kind::Flt;
        e.flt = t.flt;
        return make(std::move(e));
      case Token::Kind::Ident: {
        if (is_keyword(t.text)) fail("expected expression");
        e.name = take().text;
        if (cur().is("(") && !at_boundary()) {
          e.kind = Expr::Kind::Call;
          e.kids = call_args();
        } else {
          e.kind = Expr::Kind::Var;
        }
        return make(std::move(e));
      }
      case Token::Kind::Sym:
        if (t.is("(")) {
          take();
          return with_flags(Flags{false, true}, [&] {
            ExprPtr first = expr();
            if (cur().is(",")) {
              take();
              ExprPtr second = expr();
              expect(")");
              e.kind = Expr::Kind::Pair;
              e.kids = {std::move(first), std::move(second)};
              return make(std::move(e));
            }
            expect(")");
            return first;
          });
        }
        break;
      case Token::Kind::End:
        break;
    }
    fail("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Flags flags_;
};

}  // namespace

SurfaceProgram parse_program(std::string_view text) { return Parser(lex(text)).program(); }

SurfaceType parse_type(std::string_view text) { return Parser(lex(text)).standalone_type(); }

}  // namespace arrc::syntax
