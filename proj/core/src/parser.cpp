#include "tyra/parser.hpp"

#include <cctype>
#include <set>

#include "tyra/builtins.hpp"

namespace tyra {

namespace {

struct Token {
  enum class Kind { Atom, Var, Int, Float, Str, Punct, End, Eof };
  Kind kind;
  std::string text;
  long long ival = 0;
  double fval = 0;
  int line = 1;
  int col = 1;
};

bool is_symbol_char(char c) {
  static const std::string sym = "+-*/\\^<>=~:.?@#&";
  return sym.find(c) != std::string::npos;
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, tok_.line, tok_.col);
  }

 private:
  void skip_layout() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        return;
      }
    }
  }

  char cur() const { return text_[pos_]; }
  bool has(size_t off = 0) const { return pos_ + off < text_.size(); }
  void bump(size_t n = 1) {
    pos_ += n;
    col_ += static_cast<int>(n);
  }

  void advance() {
    skip_layout();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::Eof;
      return;
    }
    char c = cur();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (has() && std::isdigit(static_cast<unsigned char>(cur()))) bump();
      if (has(1) && cur() == '.' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        bump();
        while (has() && std::isdigit(static_cast<unsigned char>(cur()))) bump();
        tok_.kind = Token::Kind::Float;
        tok_.text = text_.substr(start, pos_ - start);
        tok_.fval = std::stod(tok_.text);
      } else {
        tok_.kind = Token::Kind::Int;
        tok_.text = text_.substr(start, pos_ - start);
        tok_.ival = std::stoll(tok_.text);
      }
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (has() && (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_')) bump();
      tok_.kind = Token::Kind::Var;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (has() && (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_')) bump();
      tok_.kind = Token::Kind::Atom;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (c == '\'') {
      bump();
      std::string s;
      while (has() && cur() != '\'') {
        s += cur();
        bump();
      }
      if (!has()) throw ParseError("unterminated quoted atom", tok_.line, tok_.col);
      bump();
      tok_.kind = Token::Kind::Atom;
      tok_.text = s;
      return;
    }
    if (c == '"') {
      bump();
      std::string s;
      while (has() && cur() != '"') {
        s += cur();
        bump();
      }
      if (!has()) throw ParseError("unterminated string", tok_.line, tok_.col);
      bump();
      tok_.kind = Token::Kind::Str;
      tok_.text = s;
      return;
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|' || c == '!') {
      tok_.kind = c == '!' ? Token::Kind::Atom : Token::Kind::Punct;
      tok_.text = std::string(1, c);
      bump();
      return;
    }
    if (is_symbol_char(c)) {
      size_t start = pos_;
      while (has() && is_symbol_char(cur())) bump();
      std::string s = text_.substr(start, pos_ - start);
      if (s == ".") {
        tok_.kind = Token::Kind::End;
        tok_.text = s;
      } else if (s == ":-" || s == "->") {
        tok_.kind = Token::Kind::Punct;
        tok_.text = s;
      } else {
        tok_.kind = Token::Kind::Atom;
        tok_.text = s;
      }
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

const std::set<std::string>& infix_ops() {
  static const std::set<std::string> ops = {"=",  "==", "\\=", "\\==", "@<",  "@>",
                                            "@=<", "@>=", "<",   ">",    "=<",  ">=",
                                            "=:=", "=\\=", "is"};
  return ops;
}

// ---------------------------------------------------------------------------
// Program parsing
// ---------------------------------------------------------------------------

class ProgramParser {
 public:
  explicit ProgramParser(const std::string& text) : lex_(text) {}

  Program parse() {
    Program p;
    while (lex_.peek().kind != Token::Kind::Eof) {
      parse_clause(p);
    }
    if (p.clauses.empty()) lex_.fail("empty program");
    if (p.query_index < 0) lex_.fail("program has no query");
    for (size_t ci = 0; ci < p.clauses.size(); ++ci) {
      Clause& c = p.clauses[ci];
      if (c.head) c.head = standardize(*c.head, static_cast<int>(ci), p);
      for (Literal& l : c.body) l.atom = standardize(l.atom, static_cast<int>(ci), p);
    }
    return p;
  }

 private:
  Term standardize(const Term& t, int clause, Program& p) {
    if (t.is_var()) {
      std::string name = t.name() + "@" + std::to_string(clause);
      p.variables.insert(name);
      return Term::var(name);
    }
    if (!t.is_compound() || t.arity() == 0) return t;
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(standardize(a, clause, p));
    return Term::compound(t.name(), std::move(args));
  }

  void parse_clause(Program& p) {
    Clause c;
    c.line = lex_.peek().line;
    c.col = lex_.peek().col;
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ":-") {
      lex_.next();
      if (p.query_index >= 0) lex_.fail("program has more than one query");
      p.query_index = static_cast<int>(p.clauses.size());
      c.body = parse_body();
    } else {
      Term head = parse_term();
      if (!head.is_compound()) lex_.fail("clause head must be an atom or compound term");
      if (is_builtin(head.symbol()))
        lex_.fail("clause head redefines built-in " + head.name());
      c.head = head;
      if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ":-") {
        lex_.next();
        c.body = parse_body();
      }
    }
    expect_end();
    p.clauses.push_back(std::move(c));
  }

  std::vector<Literal> parse_body() {
    std::vector<Literal> body;
    while (true) {
      body.push_back(parse_literal());
      if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
        lex_.next();
        continue;
      }
      break;
    }
    return body;
  }

  Literal parse_literal() {
    int line = lex_.peek().line;
    int col = lex_.peek().col;
    bool negated = false;
    if (lex_.peek().kind == Token::Kind::Atom && lex_.peek().text == "\\+") {
      lex_.next();
      negated = true;
    }
    return Literal{parse_callable(), negated, line, col};
  }

  // A callable is an atom/compound, possibly formed by an infix operator.
  Term parse_callable() {
    Term t = parse_term();
    if (lex_.peek().kind == Token::Kind::Atom && infix_ops().count(lex_.peek().text)) {
      std::string op = lex_.next().text;
      Term rhs = parse_term();
      return Term::compound(op, {t, rhs});
    }
    if (!t.is_compound()) lex_.fail("expected a callable literal");
    return t;
  }

  Term parse_term() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Var: {
        Token v = lex_.next();
        if (v.text == "_") return Term::var("_G" + std::to_string(fresh_++));
        return Term::var(v.text);
      }
      case Token::Kind::Int: {
        Token v = lex_.next();
        return Term::integer(v.ival);
      }
      case Token::Kind::Float: {
        Token v = lex_.next();
        return Term::floating(v.fval);
      }
      case Token::Kind::Str: {
        Token v = lex_.next();
        return Term::str(v.text);
      }
      case Token::Kind::Atom: {
        Token a = lex_.next();
        if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(") {
          lex_.next();
          std::vector<Term> args;
          while (true) {
            args.push_back(parse_term());
            if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
              lex_.next();
              continue;
            }
            break;
          }
          expect_punct(")");
          return Term::compound(a.text, std::move(args));
        }
        return Term::compound(a.text);
      }
      case Token::Kind::Punct:
        if (t.text == "[") return parse_list();
        if (t.text == "(") {
          lex_.next();
          Term inner = parse_term();
          expect_punct(")");
          return inner;
        }
        break;
      default:
        break;
    }
    lex_.fail("expected a term");
  }

  Term parse_list() {
    expect_punct("[");
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "]") {
      lex_.next();
      return Term::compound("[]");
    }
    std::vector<Term> items;
    items.push_back(parse_term());
    while (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
      lex_.next();
      items.push_back(parse_term());
    }
    Term tail = Term::compound("[]");
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "|") {
      lex_.next();
      tail = parse_term();
    }
    expect_punct("]");
    return Term::list(items, tail);
  }

  void expect_punct(const std::string& p) {
    if (lex_.peek().kind != Token::Kind::Punct || lex_.peek().text != p)
      lex_.fail("expected '" + p + "'");
    lex_.next();
  }

  void expect_end() {
    if (lex_.peek().kind != Token::Kind::End) lex_.fail("expected '.'");
    lex_.next();
  }

  Lexer lex_;
  int fresh_ = 0;
};

// ---------------------------------------------------------------------------
// Rule-file parsing
// ---------------------------------------------------------------------------

const std::set<std::string>& reserved_type_names() {
  static const std::set<std::string> names = {"or",    "and",    "integer", "float",
                                              "number", "string", "atom",   "atomic"};
  return names;
}

class RuleParser {
 public:
  explicit RuleParser(const std::string& text) : lex_(text) {}

  RuleSet parse() {
    RuleSet rules;
    while (lex_.peek().kind != Token::Kind::Eof) {
      if (lex_.peek().kind == Token::Kind::Atom && lex_.peek().text == "atoms") {
        lex_.next();
        while (true) {
          if (lex_.peek().kind != Token::Kind::Atom) lex_.fail("expected an atom name");
          rules.declare_atom(lex_.next().text);
          if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
            lex_.next();
            continue;
          }
          break;
        }
        expect_end();
        continue;
      }
      parse_rule(rules);
    }
    rules.validate();
    return rules;
  }

 private:
  void parse_rule(RuleSet& rules) {
    TypeRule r;
    if (lex_.peek().kind != Token::Kind::Atom) lex_.fail("expected a type constructor");
    Token name = lex_.next();
    if (reserved_type_names().count(name.text))
      throw ParseError("reserved type name used as constructor: " + name.text, name.line,
                       name.col);
    r.head_ctor = name.text;
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(") {
      lex_.next();
      while (true) {
        if (lex_.peek().kind != Token::Kind::Var) lex_.fail("expected a type parameter");
        r.head_params.push_back(lex_.next().text);
        if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
          lex_.next();
          continue;
        }
        break;
      }
      expect_punct(")");
    }
    if (!(lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "->"))
      lex_.fail("expected '->'");
    lex_.next();
    parse_rhs(r);
    expect_end();
    try {
      rules.add_rule(std::move(r));
    } catch (const DomainError& e) {
      lex_.fail(e.what());
    }
  }

  void parse_rhs(TypeRule& r) {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Punct && t.text == "[") {
      lex_.next();
      if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "]") {
        lex_.next();
        r.rhs_sym = FnSym{"[]", 0};
        return;
      }
      r.rhs_args.push_back(parse_scheme());
      expect_punct("|");
      r.rhs_args.push_back(parse_scheme());
      expect_punct("]");
      r.rhs_sym = FnSym{"[|]", 2};
      return;
    }
    if (t.kind == Token::Kind::Int) {
      // Numeric rule heads become ordinary 0-ary symbols, distinct from the
      // integer literal class.
      Token v = lex_.next();
      r.rhs_sym = FnSym{v.text, 0};
      return;
    }
    if (t.kind != Token::Kind::Atom) lex_.fail("expected a function symbol");
    Token name = lex_.next();
    if (name.text == "or" || name.text == "and")
      throw ParseError("reserved name used as function symbol: " + name.text, name.line,
                       name.col);
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(") {
      lex_.next();
      while (true) {
        r.rhs_args.push_back(parse_scheme());
        if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
          lex_.next();
          continue;
        }
        break;
      }
      expect_punct(")");
    }
    r.rhs_sym = FnSym{name.text, static_cast<int>(r.rhs_args.size())};
  }

  TypeScheme parse_scheme() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Var) return TypeScheme::param(lex_.next().text);
    if (t.kind != Token::Kind::Atom) lex_.fail("expected a type scheme");
    Token name = lex_.next();
    if (reserved_type_names().count(name.text))
      throw ParseError("reserved type name used in scheme: " + name.text, name.line,
                       name.col);
    std::vector<std::string> params;
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(") {
      lex_.next();
      while (true) {
        if (lex_.peek().kind != Token::Kind::Var)
          lex_.fail("nested schemes are not allowed; expected a type parameter");
        params.push_back(lex_.next().text);
        if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
          lex_.next();
          continue;
        }
        break;
      }
      expect_punct(")");
    }
    return TypeScheme::ctor(name.text, std::move(params));
  }

  void expect_punct(const std::string& p) {
    if (lex_.peek().kind != Token::Kind::Punct || lex_.peek().text != p)
      lex_.fail("expected '" + p + "'");
    lex_.next();
  }

  void expect_end() {
    if (lex_.peek().kind != Token::Kind::End) lex_.fail("expected '.'");
    lex_.next();
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Type expressions
// ---------------------------------------------------------------------------

class TypeParser {
 public:
  TypeParser(const std::string& text, const RuleSet& rules) : lex_(text), rules_(&rules) {}

  Type parse_full() {
    Type t = parse_or();
    if (lex_.peek().kind != Token::Kind::Eof) lex_.fail("trailing input after type");
    return t;
  }

  VtSet parse_typing(const Program& p) {
    VariableTyping mu;
    while (true) {
      if (lex_.peek().kind != Token::Kind::Var) lex_.fail("expected a query variable");
      Token v = lex_.next();
      expect_atom(":");
      Type t = parse_or();
      auto var = p.query_var(v.text);
      if (!var)
        throw DomainError("input typing mentions " + v.text +
                          ", which is not a query variable");
      mu.set(*var, t);
      if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
        lex_.next();
        continue;
      }
      break;
    }
    if (lex_.peek().kind != Token::Kind::Eof) lex_.fail("trailing input after typing");
    return VtSet::singleton(std::move(mu));
  }

 private:
  Type parse_or() {
    Type t = parse_and();
    while (lex_.peek().kind == Token::Kind::Atom && lex_.peek().text == "or") {
      lex_.next();
      t = Type::or_raw(t, parse_and());
    }
    return t;
  }

  Type parse_and() {
    Type t = parse_primary();
    while (lex_.peek().kind == Token::Kind::Atom && lex_.peek().text == "and") {
      lex_.next();
      t = Type::and_raw(t, parse_primary());
    }
    return t;
  }

  Type parse_primary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Int && (t.ival == 0 || t.ival == 1)) {
      return lex_.next().ival == 0 ? Type::zero() : Type::one();
    }
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      lex_.next();
      Type inner = parse_or();
      expect_punct(")");
      return inner;
    }
    if (t.kind != Token::Kind::Atom) lex_.fail("expected a type");
    Token name = lex_.next();
    if (auto p = prim_by_name(name.text)) {
      if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(")
        lex_.fail(name.text + " takes no arguments");
      return Type::prim(*p);
    }
    std::vector<Type> args;
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(") {
      lex_.next();
      while (true) {
        args.push_back(parse_or());
        if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
          lex_.next();
          continue;
        }
        break;
      }
      expect_punct(")");
    }
    if (!rules_->has_ctor(name.text))
      throw DomainError("unknown type name: " + name.text);
    if (rules_->ctor_arity(name.text) != static_cast<int>(args.size()))
      throw DomainError("type constructor " + name.text + " expects " +
                        std::to_string(rules_->ctor_arity(name.text)) + " arguments");
    return Type::con(name.text, std::move(args));
  }

  void expect_punct(const std::string& p) {
    if (lex_.peek().kind != Token::Kind::Punct || lex_.peek().text != p)
      lex_.fail("expected '" + p + "'");
    lex_.next();
  }

  void expect_atom(const std::string& a) {
    if (lex_.peek().kind != Token::Kind::Atom || lex_.peek().text != a)
      lex_.fail("expected '" + a + "'");
    lex_.next();
  }

  Lexer lex_;
  const RuleSet* rules_;
};

}  // namespace

RuleSet parse_rules(const std::string& text) { return RuleParser(text).parse(); }

Program parse_program(const std::string& text) { return ProgramParser(text).parse(); }

Type parse_type(const std::string& text, const RuleSet& rules) {
  return TypeParser(text, rules).parse_full();
}

VtSet parse_input_typing(const std::string& text, const RuleSet& rules, const Program& p) {
  return TypeParser(text, rules).parse_typing(p);
}

}  // namespace tyra
