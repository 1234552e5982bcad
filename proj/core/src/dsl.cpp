#include "ilock/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace ilock {

std::string EnumType::sortName() const {
  if (isBool()) return "{false,true}";
  std::string s = "{";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += values[i];
  }
  return s + "}";
}

const VarDecl* ClassDef::findVar(const std::string& n) const {
  for (const auto& v : vars)
    if (v.name == n) return &v;
  return nullptr;
}

const ListDecl* ClassDef::findList(const std::string& n) const {
  for (const auto& l : lists)
    if (l.name == n) return &l;
  return nullptr;
}

const MethodDef* ClassDef::findMethod(const std::string& n) const {
  for (const auto& m : methods)
    if (m.name == n) return &m;
  return nullptr;
}

const ClassDef* SpecAst::findClass(const std::string& n) const {
  for (const auto& c : classes)
    if (c.name == n) return &c;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  long value = 0;
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
    tok_ = Token{};
    tok_.loc = {file_, line_, col_};
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_.kind = Token::Kind::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        tok_.text += src_[pos_];
        bump();
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = Token::Kind::Int;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        tok_.text += src_[pos_];
        bump();
      }
      tok_.value = std::stol(tok_.text);
      return;
    }
    auto two = pos_ + 1 < src_.size() ? src_.substr(pos_, 2) : std::string_view();
    if (two == ":=" || two == "&&" || two == "||" || two == "->" || two == "!=") {
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

struct ParseFail {};

class SpecParser {
 public:
  SpecParser(Lexer& lx, Diagnostics& diags) : lx_(lx), diags_(diags) {}

  SpecAst parse() {
    SpecAst ast;
    while (lx_.peek().kind != Token::Kind::End) {
      expectKeyword("class");
      ast.classes.push_back(parseClass());
    }
    return ast;
  }

 private:
  ClassDef parseClass() {
    ClassDef cls;
    Token name = expectIdent("class name");
    cls.name = name.text;
    cls.loc = name.loc;
    expectPunct("{");
    while (!isPunct("}")) {
      if (isIdent("var")) {
        cls.vars.push_back(parseVar());
      } else if (isIdent("list")) {
        cls.lists.push_back(parseList());
      } else if (isIdent("method")) {
        cls.methods.push_back(parseMethod());
      } else {
        fail(lx_.peek().loc, "expected 'var', 'list', 'method' or '}', got '" +
                                 lx_.peek().text + "'");
      }
    }
    expectPunct("}");
    return cls;
  }

  VarDecl parseVar() {
    lx_.take();  // var
    VarDecl v;
    Token name = expectIdent("variable name");
    v.name = name.text;
    v.loc = name.loc;
    expectPunct(":");
    v.type = parseType();
    expectKeyword("init");
    v.init = expectIdent("initial value").text;
    expectPunct(";");
    return v;
  }

  ListDecl parseList() {
    lx_.take();  // list
    ListDecl l;
    Token name = expectIdent("list name");
    l.name = name.text;
    l.loc = name.loc;
    expectPunct(":");
    l.target_class = expectIdent("target class").text;
    if (isIdent("with")) {
      lx_.take();
      for (;;) {
        ParamDecl p;
        Token pn = expectIdent("parameter name");
        p.name = pn.text;
        p.loc = pn.loc;
        expectPunct(":");
        p.type = parseType();
        l.params.push_back(std::move(p));
        if (isPunct(",")) {
          lx_.take();
          continue;
        }
        break;
      }
    }
    expectPunct(";");
    return l;
  }

  EnumType parseType() {
    if (isIdent("bool")) {
      lx_.take();
      return EnumType{{"false", "true"}};
    }
    expectPunct("{");
    EnumType t;
    for (;;) {
      t.values.push_back(expectIdent("enum value").text);
      if (isPunct(",")) {
        lx_.take();
        continue;
      }
      break;
    }
    expectPunct("}");
    return t;
  }

  MethodDef parseMethod() {
    lx_.take();  // method
    MethodDef m;
    Token name = expectIdent("method name");
    m.name = name.text;
    m.loc = name.loc;
    expectKeyword("priority");
    Token pr = lx_.take();
    if (pr.kind != Token::Kind::Int) fail(pr.loc, "expected priority number");
    m.priority = static_cast<int>(pr.value);
    expectPunct("{");
    expectKeyword("from");
    m.source = expectIdent("source state value").text;
    expectPunct(";");
    expectKeyword("guard");
    m.guard = parseGuard();
    expectPunct(";");
    expectKeyword("effect");
    while (!isPunct("}")) m.effects.push_back(parseEffect());
    expectPunct("}");
    return m;
  }

  // guard grammar: implication (right assoc) over || over && over unary;
  // unary is !, parens, constants, `forall x in list : unary`, or comparison
  GuardPtr parseGuard() {
    GuardPtr lhs = parseOr();
    if (isPunct("->")) {
      lx_.take();
      GuardPtr rhs = parseGuard();
      auto n = std::make_shared<GuardExpr>();
      n->kind = GuardExpr::Kind::Implies;
      n->kids = {lhs, rhs};
      return n;
    }
    return lhs;
  }

  GuardPtr parseOr() {
    std::vector<GuardPtr> kids{parseAnd()};
    while (isPunct("||")) {
      lx_.take();
      kids.push_back(parseAnd());
    }
    if (kids.size() == 1) return kids[0];
    auto n = std::make_shared<GuardExpr>();
    n->kind = GuardExpr::Kind::Or;
    n->kids = std::move(kids);
    return n;
  }

  GuardPtr parseAnd() {
    std::vector<GuardPtr> kids{parseUnary()};
    while (isPunct("&&")) {
      lx_.take();
      kids.push_back(parseUnary());
    }
    if (kids.size() == 1) return kids[0];
    auto n = std::make_shared<GuardExpr>();
    n->kind = GuardExpr::Kind::And;
    n->kids = std::move(kids);
    return n;
  }

  GuardPtr parseUnary() {
    auto n = std::make_shared<GuardExpr>();
    n->loc = lx_.peek().loc;
    if (isPunct("!")) {
      lx_.take();
      n->kind = GuardExpr::Kind::Not;
      n->kids = {parseUnary()};
      return n;
    }
    if (isPunct("(")) {
      lx_.take();
      GuardPtr inner = parseGuard();
      expectPunct(")");
      return inner;
    }
    if (isIdent("true") || isIdent("false")) {
      n->kind = GuardExpr::Kind::Const;
      n->const_value = lx_.take().text == "true";
      return n;
    }
    if (isIdent("forall")) {
      lx_.take();
      n->kind = GuardExpr::Kind::ForallList;
      n->iter_var = expectIdent("iteration variable").text;
      expectKeyword("in");
      n->list_name = expectIdent("list name").text;
      expectPunct(":");
      n->kids = {parseUnary()};
      return n;
    }
    // comparison
    n->kind = GuardExpr::Kind::Cmp;
    n->lhs = parseRead();
    if (isPunct("=")) {
      lx_.take();
    } else if (isPunct("!=")) {
      n->negated = true;
      lx_.take();
    } else {
      fail(lx_.peek().loc, "expected '=' or '!=' in guard comparison");
    }
    n->rhs = parseRead();
    return n;
  }

  GuardRead parseRead() {
    GuardRead r;
    Token id = expectIdent("identifier");
    r.loc = id.loc;
    if (isPunct(".")) {
      lx_.take();
      r.is_member = true;
      r.iter = id.text;
      r.name = expectIdent("member name").text;
    } else {
      r.name = id.text;
    }
    return r;
  }

  EffectStmt parseEffect() {
    EffectStmt s;
    s.loc = lx_.peek().loc;
    if (isIdent("forall")) {
      lx_.take();
      s.kind = EffectStmt::Kind::ListAssign;
      s.iter_var = expectIdent("iteration variable").text;
      expectKeyword("in");
      s.list_name = expectIdent("list name").text;
      expectPunct(":");
      Token iv = expectIdent("iteration variable");
      if (iv.text != s.iter_var)
        fail(iv.loc, "effect must assign through its iteration variable '" + s.iter_var + "'");
      expectPunct(".");
      s.var = expectIdent("variable name").text;
    } else {
      s.kind = EffectStmt::Kind::OwnAssign;
      s.var = expectIdent("variable name").text;
    }
    expectPunct(":=");
    s.value = expectIdent("value").text;
    expectPunct(";");
    return s;
  }

  bool isIdent(const char* s) const {
    return lx_.peek().kind == Token::Kind::Ident && lx_.peek().text == s;
  }
  bool isPunct(const char* s) const {
    return lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == s;
  }

  Token expectIdent(const char* what) {
    if (lx_.peek().kind != Token::Kind::Ident)
      fail(lx_.peek().loc, std::string("expected ") + what + ", got '" + lx_.peek().text + "'");
    return lx_.take();
  }

  void expectKeyword(const char* kw) {
    if (!isIdent(kw))
      fail(lx_.peek().loc, "expected '" + std::string(kw) + "', got '" + lx_.peek().text + "'");
    lx_.take();
  }

  void expectPunct(const char* s) {
    if (!isPunct(s))
      fail(lx_.peek().loc, "expected '" + std::string(s) + "', got '" + lx_.peek().text + "'");
    lx_.take();
  }

  [[noreturn]] void fail(const SourceLoc& loc, const std::string& msg) {
    diags_.push_back({loc, "E-PARSE", msg});
    throw ParseFail{};
  }

  Lexer& lx_;
  Diagnostics& diags_;
};

}  // namespace

SpecParse parseSpec(std::string_view text, const std::string& filename) {
  SpecParse out;
  Lexer lx(text, filename);
  SpecParser parser(lx, out.diags);
  try {
    out.ast = parser.parse();
  } catch (ParseFail&) {
  }
  return out;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

struct Checker {
  const SpecAst& ast;
  Diagnostics& diags;

  void error(const SourceLoc& loc, const std::string& code, const std::string& msg) {
    diags.push_back({loc, code, msg});
  }

  // global structural enum scoping: a value name may belong to exactly one
  // value list
  void checkEnumScoping() {
    std::map<std::string, std::pair<EnumType, SourceLoc>> owner;
    auto visit = [&](const EnumType& t, const SourceLoc& loc) {
      for (const auto& v : t.values) {
        auto it = owner.find(v);
        if (it == owner.end()) {
          owner[v] = {t, loc};
        } else if (!(it->second.first == t)) {
          error(loc, "E-ENUM-CONFLICT",
                "enum value '" + v + "' already belongs to type " +
                    it->second.first.sortName());
        }
      }
    };
    for (const auto& c : ast.classes) {
      for (const auto& v : c.vars) visit(v.type, v.loc);
      for (const auto& l : c.lists)
        for (const auto& p : l.params) visit(p.type, p.loc);
    }
  }

  void checkClass(const ClassDef& cls) {
    std::set<std::string> members;
    for (const auto& v : cls.vars) {
      if (!members.insert(v.name).second)
        error(v.loc, "E-DUP-MEMBER", "duplicate member '" + v.name + "' in class '" +
                                         cls.name + "'");
      if (v.type.values.empty()) {
        error(v.loc, "E-TYPE", "variable '" + v.name + "' has an empty type");
      } else if (!v.type.contains(v.init)) {
        error(v.loc, "E-BAD-INIT", "initial value '" + v.init + "' is not a value of " +
                                       v.type.sortName());
      }
    }
    for (const auto& l : cls.lists) {
      if (!members.insert(l.name).second)
        error(l.loc, "E-DUP-MEMBER", "duplicate member '" + l.name + "' in class '" +
                                         cls.name + "'");
      const ClassDef* target = ast.findClass(l.target_class);
      if (!target) {
        error(l.loc, "E-UNKNOWN-CLASS", "list '" + l.name + "' targets undeclared class '" +
                                            l.target_class + "'");
      } else {
        for (const auto& p : l.params)
          if (target->findVar(p.name))
            error(p.loc, "E-NAME-CLASH", "link parameter '" + p.name +
                                             "' collides with a variable of class '" +
                                             target->name + "'");
      }
      std::set<std::string> pnames;
      for (const auto& p : l.params)
        if (!pnames.insert(p.name).second)
          error(p.loc, "E-DUP-MEMBER", "duplicate link parameter '" + p.name + "'");
    }

    const VarDecl* state = cls.findVar("state");
    if (!cls.methods.empty() && !state)
      error(cls.loc, "E-NO-STATE",
            "class '" + cls.name + "' has methods but no 'state' variable");

    std::set<std::string> method_names;
    std::set<std::pair<std::string, int>> source_priority;
    for (const auto& m : cls.methods) {
      if (!method_names.insert(m.name).second)
        error(m.loc, "E-DUP-METHOD", "duplicate method '" + m.name + "'");
      if (state && !state->type.contains(m.source))
        error(m.loc, "E-BAD-SOURCE", "source '" + m.source + "' is not a value of " +
                                         state->type.sortName());
      if (!source_priority.insert({m.source, m.priority}).second)
        error(m.loc, "E-DET-CONFLICT",
              "class '" + cls.name + "' has two methods from '" + m.source +
                  "' with priority " + std::to_string(m.priority));
      checkGuard(cls, *m.guard, {});
      checkEffects(cls, m);
    }
  }

  void checkGuard(const ClassDef& cls, const GuardExpr& g,
                  std::vector<std::pair<std::string, const ListDecl*>> iters) {
    switch (g.kind) {
      case GuardExpr::Kind::Const:
        return;
      case GuardExpr::Kind::Cmp: {
        auto l = resolveRead(g.lhs, cls, ast, iters, diags);
        auto r = resolveRead(g.rhs, cls, ast, iters, diags);
        if (!l || !r) return;
        if (l->kind == ResolvedRead::Kind::Value && r->kind == ResolvedRead::Kind::Value) {
          error(g.loc, "E-TYPE", "comparison of two constants");
          return;
        }
        // a bare value side takes its type from the other side
        const EnumType* lt = l->type;
        const EnumType* rt = r->type;
        if (l->kind == ResolvedRead::Kind::Value && rt && !rt->contains(l->value)) {
          error(g.lhs.loc, "E-TYPE",
                "value '" + l->value + "' is not a value of " + rt->sortName());
          return;
        }
        if (r->kind == ResolvedRead::Kind::Value && lt && !lt->contains(r->value)) {
          error(g.rhs.loc, "E-TYPE",
                "value '" + r->value + "' is not a value of " + lt->sortName());
          return;
        }
        if (lt && rt && !(*lt == *rt) && l->kind != ResolvedRead::Kind::Value &&
            r->kind != ResolvedRead::Kind::Value)
          error(g.loc, "E-TYPE", "comparison between different types " + lt->sortName() +
                                     " and " + rt->sortName());
        return;
      }
      case GuardExpr::Kind::Not:
      case GuardExpr::Kind::And:
      case GuardExpr::Kind::Or:
      case GuardExpr::Kind::Implies:
        for (const auto& k : g.kids) checkGuard(cls, *k, iters);
        return;
      case GuardExpr::Kind::ForallList: {
        const ListDecl* list = cls.findList(g.list_name);
        if (!list) {
          error(g.loc, "E-UNKNOWN-LIST",
                "guard iterates over undeclared list '" + g.list_name + "'");
          return;
        }
        for (const auto& [v, _] : iters)
          if (v == g.iter_var) {
            error(g.loc, "E-SHADOW", "iteration variable '" + g.iter_var + "' reused");
            return;
          }
        iters.emplace_back(g.iter_var, list);
        checkGuard(cls, *g.kids[0], iters);
        return;
      }
    }
  }

  void checkEffects(const ClassDef& cls, const MethodDef& m) {
    int state_writes = 0;
    std::set<std::string> own_written;
    std::set<std::pair<std::string, std::string>> list_written;
    for (const auto& e : m.effects) {
      const EnumType* target_type = nullptr;
      if (e.kind == EffectStmt::Kind::OwnAssign) {
        const VarDecl* v = cls.findVar(e.var);
        if (!v) {
          error(e.loc, "E-UNKNOWN-VAR",
                "effect assigns undeclared variable '" + e.var + "'");
          continue;
        }
        target_type = &v->type;
        if (e.var == "state") ++state_writes;
        if (!own_written.insert(e.var).second)
          diags.push_back({e.loc, "W-DOUBLE-WRITE",
                           "variable '" + e.var + "' is assigned more than once"});
      } else {
        const ListDecl* list = cls.findList(e.list_name);
        if (!list) {
          error(e.loc, "E-UNKNOWN-LIST",
                "effect iterates over undeclared list '" + e.list_name + "'");
          continue;
        }
        const ClassDef* target = ast.findClass(list->target_class);
        if (!target) continue;  // reported already
        const VarDecl* v = target->findVar(e.var);
        if (!v) {
          error(e.loc, "E-FOOTPRINT",
                "effect writes '" + e.var + "' which is not a variable of linked class '" +
                    target->name + "'; effects may only write own or linked variables");
          continue;
        }
        target_type = &v->type;
        if (!list_written.insert({e.list_name, e.var}).second)
          diags.push_back({e.loc, "W-DOUBLE-WRITE",
                           "location '" + e.list_name + "." + e.var +
                               "' is assigned more than once"});
      }
      if (target_type && !target_type->contains(e.value))
        error(e.loc, "E-TYPE", "assigned value '" + e.value + "' is not a value of " +
                                   target_type->sortName());
    }
    if (state_writes > 1)
      error(m.loc, "E-MULTI-DEST",
            "method '" + m.name + "' assigns the state variable more than once");
  }
};

}  // namespace

std::optional<ResolvedRead> resolveRead(
    const GuardRead& read, const ClassDef& cls, const SpecAst& ast,
    const std::vector<std::pair<std::string, const ListDecl*>>& iters,
    Diagnostics& diags) {
  ResolvedRead out;
  if (read.is_member) {
    const ListDecl* list = nullptr;
    for (const auto& [v, l] : iters)
      if (v == read.iter) list = l;
    if (!list) {
      diags.push_back({read.loc, "E-UNBOUND",
                       "'" + read.iter + "' is not an iteration variable in scope"});
      return std::nullopt;
    }
    out.list = list;
    const ClassDef* target = ast.findClass(list->target_class);
    if (target)
      if (const VarDecl* v = target->findVar(read.name)) {
        out.kind = ResolvedRead::Kind::MemberVar;
        out.var = v;
        out.type = &v->type;
        return out;
      }
    for (const auto& p : list->params)
      if (p.name == read.name) {
        out.kind = ResolvedRead::Kind::LinkParam;
        out.param = &p;
        out.type = &p.type;
        return out;
      }
    diags.push_back({read.loc, "E-UNKNOWN-VAR",
                     "'" + read.name + "' is neither a variable of class '" +
                         list->target_class + "' nor a parameter of list '" + list->name +
                         "'"});
    return std::nullopt;
  }
  if (const VarDecl* v = cls.findVar(read.name)) {
    out.kind = ResolvedRead::Kind::OwnVar;
    out.var = v;
    out.type = &v->type;
    return out;
  }
  // bare identifier falls back to an enum value; its type is found from the
  // comparison context by the caller
  out.kind = ResolvedRead::Kind::Value;
  out.value = read.name;
  return out;
}

Diagnostics checkWellFormed(const SpecAst& ast) {
  Diagnostics diags;
  Checker ck{ast, diags};
  std::set<std::string> class_names;
  for (const auto& c : ast.classes)
    if (!class_names.insert(c.name).second)
      ck.error(c.loc, "E-DUP-CLASS", "duplicate class '" + c.name + "'");
  ck.checkEnumScoping();
  for (const auto& c : ast.classes) ck.checkClass(c);

  // a bare-value read must be a value of some declared enum
  // (resolveRead defers this); walk guards once more with the full table
  std::set<std::string> all_values;
  for (const auto& c : ast.classes) {
    for (const auto& v : c.vars)
      for (const auto& val : v.type.values) all_values.insert(val);
    for (const auto& l : c.lists)
      for (const auto& p : l.params)
        for (const auto& val : p.type.values) all_values.insert(val);
  }
  struct ValueScan {
    const std::set<std::string>& values;
    const ClassDef* cls = nullptr;
    Diagnostics& diags;
    void scan(const GuardExpr& g) {
      if (g.kind == GuardExpr::Kind::Cmp) {
        for (const GuardRead* r : {&g.lhs, &g.rhs})
          if (!r->is_member && !cls->findVar(r->name) && !values.count(r->name))
            diags.push_back({r->loc, "E-UNKNOWN-SYMBOL",
                             "'" + r->name + "' is neither a variable of class '" +
                                 cls->name + "' nor a known enum value"});
      }
      for (const auto& k : g.kids) scan(*k);
    }
  } vs{all_values, nullptr, diags};
  for (const auto& c : ast.classes) {
    vs.cls = &c;
    for (const auto& m : c.methods) vs.scan(*m.guard);
  }
  return diags;
}

SpecParse parseAndCheck(std::string_view text, const std::string& filename) {
  SpecParse out = parseSpec(text, filename);
  if (out.ast) {
    Diagnostics more = checkWellFormed(*out.ast);
    out.diags.insert(out.diags.end(), more.begin(), more.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pretty printer

namespace {

int guardPrec(const GuardExpr& g) {
  switch (g.kind) {
    case GuardExpr::Kind::Implies:
      return 0;
    case GuardExpr::Kind::Or:
      return 1;
    case GuardExpr::Kind::And:
      return 2;
    default:
      return 3;
  }
}

std::string readText(const GuardRead& r) {
  return r.is_member ? r.iter + "." + r.name : r.name;
}

void printGuard(const GuardExpr& g, int parent_prec, std::string& out) {
  int p = guardPrec(g);
  bool paren = p < parent_prec;
  if (paren) out += "( ";
  switch (g.kind) {
    case GuardExpr::Kind::Const:
      out += g.const_value ? "true" : "false";
      break;
    case GuardExpr::Kind::Cmp:
      out += readText(g.lhs) + (g.negated ? " != " : " = ") + readText(g.rhs);
      break;
    case GuardExpr::Kind::Not:
      out += "!";
      printGuard(*g.kids[0], 4, out);
      break;
    case GuardExpr::Kind::And:
      for (size_t i = 0; i < g.kids.size(); ++i) {
        if (i) out += " && ";
        printGuard(*g.kids[i], p + 1, out);
      }
      break;
    case GuardExpr::Kind::Or:
      for (size_t i = 0; i < g.kids.size(); ++i) {
        if (i) out += " || ";
        printGuard(*g.kids[i], p + 1, out);
      }
      break;
    case GuardExpr::Kind::Implies:
      printGuard(*g.kids[0], p + 1, out);
      out += " -> ";
      printGuard(*g.kids[1], p, out);
      break;
    case GuardExpr::Kind::ForallList: {
      out += "forall " + g.iter_var + " in " + g.list_name + " : ";
      const GuardExpr& body = *g.kids[0];
      if (guardPrec(body) >= 3 && body.kind != GuardExpr::Kind::ForallList) {
        printGuard(body, 3, out);
      } else {
        out += "( ";
        printGuard(body, 0, out);
        out += " )";
      }
      break;
    }
  }
  if (paren) out += " )";
}

std::string typeText(const EnumType& t) {
  if (t.isBool()) return "bool";
  std::string s = "{ ";
  for (size_t i = 0; i < t.values.size(); ++i) {
    if (i) s += ", ";
    s += t.values[i];
  }
  return s + " }";
}

}  // namespace

std::string printSpec(const SpecAst& ast) {
  std::ostringstream os;
  bool first_class = true;
  for (const auto& c : ast.classes) {
    if (!first_class) os << "\n";
    first_class = false;
    os << "class " << c.name << " {\n";
    for (const auto& v : c.vars)
      os << "  var " << v.name << " : " << typeText(v.type) << " init " << v.init << " ;\n";
    for (const auto& l : c.lists) {
      os << "  list " << l.name << " : " << l.target_class;
      if (!l.params.empty()) {
        os << " with ";
        for (size_t i = 0; i < l.params.size(); ++i) {
          if (i) os << ", ";
          os << l.params[i].name << " : " << typeText(l.params[i].type);
        }
      }
      os << " ;\n";
    }
    for (const auto& m : c.methods) {
      os << "\n  method " << m.name << " priority " << m.priority << " {\n";
      os << "    from " << m.source << " ;\n";
      std::string guard;
      printGuard(*m.guard, 0, guard);
      os << "    guard " << guard << " ;\n";
      os << "    effect\n";
      for (const auto& e : m.effects) {
        os << "      ";
        if (e.kind == EffectStmt::Kind::ListAssign)
          os << "forall " << e.iter_var << " in " << e.list_name << " : " << e.iter_var
             << "." << e.var;
        else
          os << e.var;
        os << " := " << e.value << " ;\n";
      }
      os << "  }\n";
    }
    os << "}\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Footprint

bool Footprint::writesOwn(const std::string& v) const {
  return std::find(own_vars.begin(), own_vars.end(), v) != own_vars.end();
}

bool Footprint::writesListVar(const std::string& list, const std::string& v) const {
  for (const auto& [l, var] : list_vars)
    if (l == list && var == v) return true;
  return false;
}

Footprint methodFootprint(const MethodDef& m) {
  Footprint fp;
  for (const auto& e : m.effects) {
    if (e.kind == EffectStmt::Kind::OwnAssign) {
      if (!fp.writesOwn(e.var)) fp.own_vars.push_back(e.var);
    } else {
      if (!fp.writesListVar(e.list_name, e.var))
        fp.list_vars.emplace_back(e.list_name, e.var);
    }
  }
  return fp;
}

}  // namespace ilock
