#include "ilock/fol_text.hpp"

#include <cctype>
#include <set>

namespace ilock {

namespace {

struct Token {
  enum class Kind { Ident, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {
    advance();
  }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  SourceLoc loc() const { return {file_, line_, col_}; }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    tok_.loc = {file_, line_, col_};
    if (pos_ >= src_.size()) {
      tok_ = Token{Token::Kind::End, "", tok_.loc};
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size()) {
        char k = src_[pos_];
        bool name_dash = k == '-' && pos_ + 1 < src_.size() &&
                         (std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) ||
                          src_[pos_ + 1] == '_');
        if (!(std::isalnum(static_cast<unsigned char>(k)) || k == '_' || name_dash)) break;
        id += k;
        bump();
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = id;
      return;
    }
    // multi-char operators first
    auto two = pos_ + 1 < src_.size() ? src_.substr(pos_, 2) : std::string_view();
    if (two == "&&" || two == "||" || two == "->" || two == "!=" || two == ":=") {
      tok_.kind = Token::Kind::Punct;
      tok_.text = std::string(two);
      bump();
      bump();
      return;
    }
    tok_.kind = Token::Kind::Punct;
    tok_.text = std::string(1, c);
    bump();
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

struct ParseFail {};  // thrown to unwind after recording a diagnostic

class FormulaParser {
 public:
  FormulaParser(Lexer& lx, const Signature& sig, const std::vector<FormulaMacro>& macros,
                Diagnostics& diags)
      : lx_(lx), sig_(sig), macros_(macros), diags_(diags) {}

  // scope: variables visible at this point (name -> sort)
  FormulaPtr parseFormula(std::map<std::string, std::string>& scope) {
    if (isIdent("forall") || isIdent("exists")) {
      bool universal = lx_.peek().text == "forall";
      lx_.take();
      Token var = expectIdent("quantified variable");
      expectPunct(":");
      Token sort = expectIdent("sort name");
      expectPunct(".");
      if (scope.count(var.text))
        fail(var.loc, "E-SHADOW", "variable '" + var.text + "' already bound");
      scope[var.text] = sort.text;
      FormulaPtr body = parseFormula(scope);
      scope.erase(var.text);
      return universal ? mkForall(var.text, sort.text, body)
                       : mkExists(var.text, sort.text, body);
    }
    FormulaPtr lhs = parseOr(scope);
    if (isPunct("->")) {
      lx_.take();
      FormulaPtr rhs = parseFormula(scope);  // right-assoc; may be quantified
      return mkImplies(lhs, rhs);
    }
    return lhs;
  }

 private:
  FormulaPtr parseOr(std::map<std::string, std::string>& scope) {
    std::vector<FormulaPtr> kids{parseAnd(scope)};
    while (isPunct("||")) {
      lx_.take();
      kids.push_back(parseAnd(scope));
    }
    return kids.size() == 1 ? kids[0] : mkOr(std::move(kids));
  }

  FormulaPtr parseAnd(std::map<std::string, std::string>& scope) {
    std::vector<FormulaPtr> kids{parseUnary(scope)};
    while (isPunct("&&")) {
      lx_.take();
      kids.push_back(parseUnary(scope));
    }
    return kids.size() == 1 ? kids[0] : mkAnd(std::move(kids));
  }

  FormulaPtr parseUnary(std::map<std::string, std::string>& scope) {
    if (isPunct("!")) {
      lx_.take();
      return mkNot(parseUnary(scope));
    }
    if (isPunct("(")) {
      lx_.take();
      FormulaPtr f = parseFormula(scope);
      expectPunct(")");
      return f;
    }
    if (isIdent("true")) {
      lx_.take();
      return mkTrue();
    }
    if (isIdent("false")) {
      lx_.take();
      return mkFalse();
    }
    if (isIdent("forall") || isIdent("exists")) return parseFormula(scope);
    return parseAtom(scope);
  }

  FormulaPtr parseAtom(std::map<std::string, std::string>& scope) {
    Token head = expectIdent("atom");
    // relation atom or macro call
    if (isPunct("(") && sig_.findRelation(head.text)) {
      std::vector<ObjArg> args = parseArgList(scope);
      return mkRel(head.text, std::move(args));
    }
    if (isPunct("(")) {
      for (const auto& m : macros_)
        if (m.name == head.text) return expandMacro(m, head.loc, scope);
    }
    Term lhs = finishTerm(head, scope);
    bool neq = false;
    if (isPunct("=")) {
      lx_.take();
    } else if (isPunct("!=")) {
      neq = true;
      lx_.take();
    } else {
      fail(lx_.peek().loc, "E-PARSE", "expected '=' or '!=' after term");
    }
    Token rhead = expectIdent("term");
    Term rhs = finishTerm(rhead, scope);
    return neq ? mkNeq(std::move(lhs), std::move(rhs)) : mkEq(std::move(lhs), std::move(rhs));
  }

  // head has been consumed; handles f'[v], f[v], p(v,...), bare variable/value
  Term finishTerm(const Token& head, std::map<std::string, std::string>& scope) {
    bool primed = false;
    if (isPunct("'")) {
      primed = true;
      lx_.take();
    }
    if (isPunct("[")) {
      lx_.take();
      Token arg = expectIdent("argument");
      expectPunct("]");
      return tApp(head.text, {argRef(arg, scope)}, primed);
    }
    if (isPunct("(")) {
      std::vector<ObjArg> args = parseArgList(scope);
      if (primed) fail(head.loc, "E-PRIME", "'" + head.text + "' cannot be primed");
      return tApp(head.text, std::move(args));
    }
    if (primed) fail(head.loc, "E-PARSE", "prime without application");
    if (scope.count(head.text)) return tVar(head.text);
    if (sig_.sortOfValue(head.text)) return tVal(head.text);
    fail(head.loc, "E-UNKNOWN-SYMBOL",
         "'" + head.text + "' is neither a variable in scope nor an enum value");
    return tVal(head.text);
  }

  ObjArg argRef(const Token& t, std::map<std::string, std::string>& scope) {
    if (!scope.count(t.text))
      fail(t.loc, "E-UNBOUND", "unbound variable '" + t.text + "'");
    return VarRef{t.text};
  }

  std::vector<ObjArg> parseArgList(std::map<std::string, std::string>& scope) {
    expectPunct("(");
    std::vector<ObjArg> args;
    if (!isPunct(")")) {
      for (;;) {
        Token a = expectIdent("argument variable");
        args.push_back(argRef(a, scope));
        if (isPunct(",")) {
          lx_.take();
          continue;
        }
        break;
      }
    }
    expectPunct(")");
    return args;
  }

  FormulaPtr expandMacro(const FormulaMacro& m, const SourceLoc& loc,
                         std::map<std::string, std::string>& scope) {
    std::vector<ObjArg> args = parseArgList(scope);
    if (args.size() != m.params.size())
      fail(loc, "E-MACRO", "macro '" + m.name + "' expects " +
                               std::to_string(m.params.size()) + " argument(s)");
    // freshen the body's binders against everything visible here so the
    // expansion cannot capture or shadow caller variables
    std::set<std::string> used;
    for (const auto& [n, _] : scope) used.insert(n);
    for (const auto& a : args) used.insert(std::get<VarRef>(a).name);
    FormulaPtr body = alphaRename(m.body, used);
    for (size_t i = 0; i < args.size(); ++i)
      body = substitute(body, m.params[i].first, args[i]);
    return body;
  }

  FormulaPtr alphaRename(const FormulaPtr& f, std::set<std::string>& used) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Forall:
      case K::Exists: {
        std::string name = f->var;
        if (used.count(name)) {
          int i = 1;
          while (used.count(name + "_" + std::to_string(i))) ++i;
          name = name + "_" + std::to_string(i);
        }
        used.insert(name);
        FormulaPtr body = f->kids[0];
        if (name != f->var) body = substitute(body, f->var, VarRef{name});
        body = alphaRename(body, used);
        return f->kind == K::Forall ? mkForall(name, f->var_sort, body)
                                    : mkExists(name, f->var_sort, body);
      }
      case K::Not:
        return mkNot(alphaRename(f->kids[0], used));
      case K::And:
      case K::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids) kids.push_back(alphaRename(k, used));
        return f->kind == K::And ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
      }
      case K::Implies:
        return mkImplies(alphaRename(f->kids[0], used), alphaRename(f->kids[1], used));
      default:
        return f;
    }
  }

  bool isIdent(const char* s) const {
    return lx_.peek().kind == Token::Kind::Ident && lx_.peek().text == s;
  }
  bool isPunct(const char* s) const {
    return lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == s;
  }

  Token expectIdent(const char* what) {
    if (lx_.peek().kind != Token::Kind::Ident)
      fail(lx_.peek().loc, "E-PARSE",
           std::string("expected ") + what + ", got '" + lx_.peek().text + "'");
    return lx_.take();
  }

  void expectPunct(const char* s) {
    if (!isPunct(s))
      fail(lx_.peek().loc, "E-PARSE",
           "expected '" + std::string(s) + "', got '" + lx_.peek().text + "'");
    lx_.take();
  }

  [[noreturn]] void fail(const SourceLoc& loc, const std::string& code,
                         const std::string& msg) {
    diags_.push_back({loc, code, msg});
    throw ParseFail{};
  }

  Lexer& lx_;
  const Signature& sig_;
  const std::vector<FormulaMacro>& macros_;
  Diagnostics& diags_;
};

}  // namespace

FormulaParse parseFormula(std::string_view text, const Signature& sig,
                          const std::map<std::string, std::string>& free_vars,
                          const std::vector<FormulaMacro>& macros,
                          const std::string& filename) {
  FormulaParse out;
  Lexer lx(text, filename);
  FormulaParser p(lx, sig, macros, out.diags);
  std::map<std::string, std::string> scope = free_vars;
  try {
    FormulaPtr f = p.parseFormula(scope);
    if (lx.peek().kind != Token::Kind::End) {
      out.diags.push_back({lx.peek().loc, "E-PARSE",
                           "unexpected trailing input '" + lx.peek().text + "'"});
      return out;
    }
    if (auto d = sortCheck(*f, sig, free_vars)) {
      out.diags.push_back(*d);
      return out;
    }
    out.formula = f;
  } catch (ParseFail&) {
  }
  return out;
}

PropertyFileParse parsePropertyFile(std::string_view text, const Signature& sig,
                                    const std::string& filename) {
  PropertyFileParse out;
  Lexer lx(text, filename);
  FormulaParser p(lx, sig, out.macros, out.diags);
  try {
    for (;;) {
      const Token& head = lx.peek();
      if (head.kind == Token::Kind::End) break;
      if (head.kind != Token::Kind::Ident ||
          (head.text != "macro" && head.text != "property")) {
        out.diags.push_back(
            {head.loc, "E-PARSE", "expected 'macro' or 'property', got '" + head.text + "'"});
        return out;
      }
      bool is_macro = head.text == "macro";
      lx.take();
      Token name = lx.take();
      if (name.kind != Token::Kind::Ident) {
        out.diags.push_back({name.loc, "E-PARSE", "expected name"});
        return out;
      }
      std::map<std::string, std::string> scope;
      FormulaMacro m;
      m.name = name.text;
      if (is_macro) {
        // parameter list with sorts
        if (!(lx.peek().kind == Token::Kind::Punct && lx.peek().text == "(")) {
          out.diags.push_back({lx.peek().loc, "E-PARSE", "expected '(' after macro name"});
          return out;
        }
        lx.take();
        for (;;) {
          Token v = lx.take();
          if (v.kind != Token::Kind::Ident) {
            out.diags.push_back({v.loc, "E-PARSE", "expected parameter name"});
            return out;
          }
          if (!(lx.peek().kind == Token::Kind::Punct && lx.peek().text == ":")) {
            out.diags.push_back({lx.peek().loc, "E-PARSE", "expected ':' in parameter"});
            return out;
          }
          lx.take();
          Token s = lx.take();
          if (s.kind != Token::Kind::Ident) {
            out.diags.push_back({s.loc, "E-PARSE", "expected sort name"});
            return out;
          }
          m.params.emplace_back(v.text, s.text);
          scope[v.text] = s.text;
          if (lx.peek().kind == Token::Kind::Punct && lx.peek().text == ",") {
            lx.take();
            continue;
          }
          break;
        }
        if (!(lx.peek().kind == Token::Kind::Punct && lx.peek().text == ")")) {
          out.diags.push_back({lx.peek().loc, "E-PARSE", "expected ')'"});
          return out;
        }
        lx.take();
      }
      if (!(lx.peek().kind == Token::Kind::Punct && lx.peek().text == ":=")) {
        out.diags.push_back({lx.peek().loc, "E-PARSE", "expected ':='"});
        return out;
      }
      lx.take();
      FormulaPtr body = p.parseFormula(scope);
      if (!(lx.peek().kind == Token::Kind::Punct && lx.peek().text == ";")) {
        out.diags.push_back({lx.peek().loc, "E-PARSE", "expected ';'"});
        return out;
      }
      lx.take();
      if (is_macro) {
        std::map<std::string, std::string> param_sorts(m.params.begin(), m.params.end());
        if (auto d = sortCheck(*body, sig, param_sorts)) {
          out.diags.push_back(*d);
          return out;
        }
        m.body = body;
        out.macros.push_back(std::move(m));
      } else {
        if (out.formula) {
          out.diags.push_back({name.loc, "E-PARSE", "multiple 'property' declarations"});
          return out;
        }
        if (auto d = sortCheck(*body, sig)) {
          out.diags.push_back(*d);
          return out;
        }
        out.name = name.text;
        out.formula = body;
      }
    }
    if (!out.formula)
      out.diags.push_back({SourceLoc{filename, 0, 0}, "E-PARSE",
                           "property file declares no 'property'"});
  } catch (ParseFail&) {
  }
  return out;
}

}  // namespace ilock
