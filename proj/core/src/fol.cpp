#include "ilock/fol.hpp"

#include <algorithm>
#include <sstream>

namespace ilock {

// ---------------------------------------------------------------------------
// Signature

void Signature::checkFreshName(const std::string& name) const {
  if (sort_ids_.count(name) || state_ids_.count(name) ||
      rel_ids_.count(name) || param_ids_.count(name))
    throw Error("signature: duplicate symbol name '" + name + "'");
}

const Sort& Signature::requireSort(const std::string& name, SortKind kind,
                                   const std::string& context) const {
  const Sort* s = findSort(name);
  if (!s) throw Error("signature: " + context + " references unknown sort '" + name + "'");
  if (s->kind != kind)
    throw Error("signature: " + context + " needs " +
                (kind == SortKind::Object ? "an object" : "an enum") +
                " sort, got '" + name + "'");
  return *s;
}

void Signature::addSort(Sort s) {
  checkFreshName(s.name);
  if (s.kind == SortKind::Enum) {
    if (s.values.empty())
      throw Error("signature: enum sort '" + s.name + "' has no values");
    for (size_t i = 0; i < s.values.size(); ++i) {
      const auto& v = s.values[i];
      if (value_owner_.count(v))
        throw Error("signature: enum value '" + v + "' already belongs to sort '" +
                    sorts_[value_owner_.at(v).first].name + "'");
      for (size_t j = i + 1; j < s.values.size(); ++j)
        if (s.values[j] == v)
          throw Error("signature: enum sort '" + s.name + "' repeats value '" + v + "'");
    }
  } else if (!s.values.empty()) {
    throw Error("signature: object sort '" + s.name + "' must not list values");
  }
  int id = static_cast<int>(sorts_.size());
  sort_ids_[s.name] = id;
  if (s.kind == SortKind::Enum)
    for (size_t i = 0; i < s.values.size(); ++i)
      value_owner_[s.values[i]] = {id, static_cast<int>(i)};
  sorts_.push_back(std::move(s));
}

void Signature::addStateFn(StateFn f) {
  checkFreshName(f.name);
  requireSort(f.arg_sort, SortKind::Object, "state function '" + f.name + "'");
  requireSort(f.value_sort, SortKind::Enum, "state function '" + f.name + "'");
  state_ids_[f.name] = static_cast<int>(state_fns_.size());
  state_fns_.push_back(std::move(f));
}

void Signature::addRelation(RigidRelation r) {
  checkFreshName(r.name);
  for (const auto& a : r.arg_sorts)
    requireSort(a, SortKind::Object, "relation '" + r.name + "'");
  rel_ids_[r.name] = static_cast<int>(relations_.size());
  relations_.push_back(std::move(r));
}

void Signature::addParam(RigidParam p) {
  checkFreshName(p.name);
  for (const auto& a : p.arg_sorts)
    requireSort(a, SortKind::Object, "parameter '" + p.name + "'");
  requireSort(p.value_sort, SortKind::Enum, "parameter '" + p.name + "'");
  param_ids_[p.name] = static_cast<int>(params_.size());
  params_.push_back(std::move(p));
}

namespace {
int lookup(const std::map<std::string, int>& m, const std::string& k) {
  auto it = m.find(k);
  return it == m.end() ? -1 : it->second;
}
}  // namespace

int Signature::sortId(const std::string& n) const { return lookup(sort_ids_, n); }
int Signature::stateFnId(const std::string& n) const { return lookup(state_ids_, n); }
int Signature::relationId(const std::string& n) const { return lookup(rel_ids_, n); }
int Signature::paramId(const std::string& n) const { return lookup(param_ids_, n); }

const Sort* Signature::findSort(const std::string& n) const {
  int id = sortId(n);
  return id < 0 ? nullptr : &sorts_[id];
}
const StateFn* Signature::findStateFn(const std::string& n) const {
  int id = stateFnId(n);
  return id < 0 ? nullptr : &state_fns_[id];
}
const RigidRelation* Signature::findRelation(const std::string& n) const {
  int id = relationId(n);
  return id < 0 ? nullptr : &relations_[id];
}
const RigidParam* Signature::findParam(const std::string& n) const {
  int id = paramId(n);
  return id < 0 ? nullptr : &params_[id];
}

const Sort* Signature::sortOfValue(const std::string& v) const {
  auto it = value_owner_.find(v);
  return it == value_owner_.end() ? nullptr : &sorts_[it->second.first];
}

int Signature::valueIndex(const std::string& v) const {
  auto it = value_owner_.find(v);
  return it == value_owner_.end() ? -1 : it->second.second;
}

std::vector<std::string> Signature::objectSortNames() const {
  std::vector<std::string> out;
  for (const auto& s : sorts_)
    if (s.kind == SortKind::Object) out.push_back(s.name);
  return out;
}

// ---------------------------------------------------------------------------
// Builders

Term tVar(std::string name) {
  Term t;
  t.kind = Term::Kind::Obj;
  t.obj = VarRef{std::move(name)};
  return t;
}

Term tElem(std::string sort, int index) {
  Term t;
  t.kind = Term::Kind::Obj;
  t.obj = ElemRef{std::move(sort), index};
  return t;
}

Term tVal(std::string value) {
  Term t;
  t.kind = Term::Kind::Value;
  t.value = std::move(value);
  return t;
}

Term tApp(std::string fn, std::vector<ObjArg> args, bool primed) {
  Term t;
  t.kind = Term::Kind::App;
  t.fn = std::move(fn);
  t.args = std::move(args);
  t.primed = primed;
  return t;
}

Term tApp1(std::string fn, std::string var, bool primed) {
  return tApp(std::move(fn), {VarRef{std::move(var)}}, primed);
}

namespace {
std::shared_ptr<Formula> node(Formula::Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}
}  // namespace

FormulaPtr mkTrue() { return node(Formula::Kind::True); }
FormulaPtr mkFalse() { return node(Formula::Kind::False); }

FormulaPtr mkEq(Term lhs, Term rhs) {
  auto f = node(Formula::Kind::Eq);
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

FormulaPtr mkNeq(Term lhs, Term rhs) { return mkNot(mkEq(std::move(lhs), std::move(rhs))); }

FormulaPtr mkRel(std::string rel, std::vector<ObjArg> args) {
  auto f = node(Formula::Kind::Rel);
  f->rel = std::move(rel);
  f->args = std::move(args);
  return f;
}

FormulaPtr mkNot(FormulaPtr a) {
  auto f = node(Formula::Kind::Not);
  f->kids.push_back(std::move(a));
  return f;
}

FormulaPtr mkAnd(std::vector<FormulaPtr> kids) {
  if (kids.empty()) return mkTrue();
  if (kids.size() == 1) return kids[0];
  auto f = node(Formula::Kind::And);
  f->kids = std::move(kids);
  return f;
}

FormulaPtr mkOr(std::vector<FormulaPtr> kids) {
  if (kids.empty()) return mkFalse();
  if (kids.size() == 1) return kids[0];
  auto f = node(Formula::Kind::Or);
  f->kids = std::move(kids);
  return f;
}

FormulaPtr mkImplies(FormulaPtr a, FormulaPtr b) {
  auto f = node(Formula::Kind::Implies);
  f->kids.push_back(std::move(a));
  f->kids.push_back(std::move(b));
  return f;
}

FormulaPtr mkForall(std::string var, std::string sort, FormulaPtr body) {
  auto f = node(Formula::Kind::Forall);
  f->var = std::move(var);
  f->var_sort = std::move(sort);
  f->kids.push_back(std::move(body));
  return f;
}

FormulaPtr mkExists(std::string var, std::string sort, FormulaPtr body) {
  auto f = node(Formula::Kind::Exists);
  f->var = std::move(var);
  f->var_sort = std::move(sort);
  f->kids.push_back(std::move(body));
  return f;
}

// ---------------------------------------------------------------------------
// Printing

std::string toString(const ObjArg& a) {
  if (const auto* v = std::get_if<VarRef>(&a)) return v->name;
  const auto& e = std::get<ElemRef>(a);
  return "@" + e.sort + std::to_string(e.index);
}

std::string toString(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Obj:
      return toString(t.obj);
    case Term::Kind::Value:
      return t.value;
    case Term::Kind::App: {
      std::string s = t.fn;
      if (t.primed) s += '\'';
      if (t.args.size() == 1) {
        s += '[' + toString(t.args[0]) + ']';
      } else {
        s += '(';
        for (size_t i = 0; i < t.args.size(); ++i) {
          if (i) s += ", ";
          s += toString(t.args[i]);
        }
        s += ')';
      }
      return s;
    }
  }
  return "?";
}

namespace {

// precedence: quantifier/-> lowest, then ||, &&, !, atoms
int prec(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::Implies:
      return 0;
    case Formula::Kind::Or:
      return 1;
    case Formula::Kind::And:
      return 2;
    case Formula::Kind::Not:
      return 3;
    default:
      return 4;
  }
}

void print(const Formula& f, int parent_prec, std::string& out) {
  int p = prec(f);
  bool paren = p < parent_prec;
  if (paren) out += '(';
  switch (f.kind) {
    case Formula::Kind::True:
      out += "true";
      break;
    case Formula::Kind::False:
      out += "false";
      break;
    case Formula::Kind::Eq:
      out += toString(f.lhs) + " = " + toString(f.rhs);
      break;
    case Formula::Kind::Rel: {
      out += f.rel + '(';
      for (size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ", ";
        out += toString(f.args[i]);
      }
      out += ')';
      break;
    }
    case Formula::Kind::Not:
      // negated equality prints as != so output stays re-parseable text
      if (f.kids[0]->kind == Formula::Kind::Eq) {
        const Formula& eq = *f.kids[0];
        out += toString(eq.lhs) + " != " + toString(eq.rhs);
      } else {
        out += '!';
        print(*f.kids[0], 4, out);
      }
      break;
    case Formula::Kind::And:
      for (size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out += " && ";
        print(*f.kids[i], p + 1, out);
      }
      break;
    case Formula::Kind::Or:
      for (size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out += " || ";
        print(*f.kids[i], p + 1, out);
      }
      break;
    case Formula::Kind::Implies:
      print(*f.kids[0], p + 1, out);
      out += " -> ";
      print(*f.kids[1], p, out);
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out += f.kind == Formula::Kind::Forall ? "forall " : "exists ";
      out += f.var + " : " + f.var_sort + ". ";
      print(*f.kids[0], p, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string toString(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

std::string toString(const FormulaPtr& f) { return toString(*f); }

// ---------------------------------------------------------------------------
// Structure-free utilities

namespace {
bool sameArg(const ObjArg& a, const ObjArg& b) {
  if (a.index() != b.index()) return false;
  if (const auto* v = std::get_if<VarRef>(&a))
    return v->name == std::get<VarRef>(b).name;
  const auto& ea = std::get<ElemRef>(a);
  const auto& eb = std::get<ElemRef>(b);
  return ea.sort == eb.sort && ea.index == eb.index;
}

bool sameTerm(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Obj:
      return sameArg(a.obj, b.obj);
    case Term::Kind::Value:
      return a.value == b.value;
    case Term::Kind::App:
      if (a.fn != b.fn || a.primed != b.primed || a.args.size() != b.args.size())
        return false;
      for (size_t i = 0; i < a.args.size(); ++i)
        if (!sameArg(a.args[i], b.args[i])) return false;
      return true;
  }
  return false;
}
}  // namespace

bool structurallyEqual(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Eq:
      return sameTerm(a.lhs, b.lhs) && sameTerm(a.rhs, b.rhs);
    case Formula::Kind::Rel: {
      if (a.rel != b.rel || a.args.size() != b.args.size()) return false;
      for (size_t i = 0; i < a.args.size(); ++i)
        if (!sameArg(a.args[i], b.args[i])) return false;
      return true;
    }
    default:
      break;
  }
  if (a.var != b.var || a.var_sort != b.var_sort) return false;
  if (a.kids.size() != b.kids.size()) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!structurallyEqual(*a.kids[i], *b.kids[i])) return false;
  return true;
}

void collectSymbols(const Formula& f, std::vector<std::string>& out) {
  auto add = [&out](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  switch (f.kind) {
    case Formula::Kind::Eq:
      if (f.lhs.kind == Term::Kind::App) add(f.lhs.fn);
      if (f.rhs.kind == Term::Kind::App) add(f.rhs.fn);
      break;
    case Formula::Kind::Rel:
      add(f.rel);
      break;
    default:
      break;
  }
  for (const auto& k : f.kids) collectSymbols(*k, out);
}

namespace {
void freeVarsRec(const Formula& f, std::vector<std::string>& bound,
                 std::vector<std::string>& out) {
  auto scanArg = [&](const ObjArg& a) {
    if (const auto* v = std::get_if<VarRef>(&a))
      if (std::find(bound.begin(), bound.end(), v->name) == bound.end() &&
          std::find(out.begin(), out.end(), v->name) == out.end())
        out.push_back(v->name);
  };
  auto scanTerm = [&](const Term& t) {
    if (t.kind == Term::Kind::Obj) scanArg(t.obj);
    if (t.kind == Term::Kind::App)
      for (const auto& a : t.args) scanArg(a);
  };
  switch (f.kind) {
    case Formula::Kind::Eq:
      scanTerm(f.lhs);
      scanTerm(f.rhs);
      return;
    case Formula::Kind::Rel:
      for (const auto& a : f.args) scanArg(a);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      bound.push_back(f.var);
      freeVarsRec(*f.kids[0], bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& k : f.kids) freeVarsRec(*k, bound, out);
  }
}
}  // namespace

std::vector<std::string> freeVars(const Formula& f) {
  std::vector<std::string> bound, out;
  freeVarsRec(f, bound, out);
  return out;
}

bool mentionsPrimed(const Formula& f) {
  if (f.kind == Formula::Kind::Eq &&
      ((f.lhs.kind == Term::Kind::App && f.lhs.primed) ||
       (f.rhs.kind == Term::Kind::App && f.rhs.primed)))
    return true;
  for (const auto& k : f.kids)
    if (mentionsPrimed(*k)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

ObjArg substArg(const ObjArg& a, const std::string& var, const ObjArg& repl) {
  if (const auto* v = std::get_if<VarRef>(&a))
    if (v->name == var) return repl;
  return a;
}

Term substTerm(const Term& t, const std::string& var, const ObjArg& repl) {
  Term out = t;
  if (t.kind == Term::Kind::Obj) out.obj = substArg(t.obj, var, repl);
  if (t.kind == Term::Kind::App)
    for (auto& a : out.args) a = substArg(a, var, repl);
  return out;
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const ObjArg& arg) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::True:
    case K::False:
      return f;
    case K::Eq:
      return mkEq(substTerm(f->lhs, var, arg), substTerm(f->rhs, var, arg));
    case K::Rel: {
      std::vector<ObjArg> args;
      for (const auto& a : f->args) args.push_back(substArg(a, var, arg));
      return mkRel(f->rel, std::move(args));
    }
    case K::Not:
      return mkNot(substitute(f->kids[0], var, arg));
    case K::And:
    case K::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(substitute(k, var, arg));
      return f->kind == K::And ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case K::Implies:
      return mkImplies(substitute(f->kids[0], var, arg), substitute(f->kids[1], var, arg));
    case K::Forall:
    case K::Exists: {
      if (f->var == var) return f;  // shadowed (ill-sorted anyway)
      auto body = substitute(f->kids[0], var, arg);
      return f->kind == K::Forall ? mkForall(f->var, f->var_sort, body)
                                  : mkExists(f->var, f->var_sort, body);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Sort checking

namespace {

struct SortChecker {
  const Signature& sig;
  std::map<std::string, std::string> scope;  // var -> sort
  std::optional<Diagnostic> fail;

  void error(const std::string& code, const std::string& msg) {
    if (!fail) fail = Diagnostic{std::nullopt, code, msg};
  }

  // returns sort name of an object argument, or "" after reporting
  std::string argSort(const ObjArg& a) {
    if (const auto* v = std::get_if<VarRef>(&a)) {
      auto it = scope.find(v->name);
      if (it == scope.end()) {
        error("E-UNBOUND", "unbound variable '" + v->name + "'");
        return "";
      }
      return it->second;
    }
    const auto& e = std::get<ElemRef>(a);
    const Sort* s = sig.findSort(e.sort);
    if (!s || s->kind != SortKind::Object) {
      error("E-UNKNOWN-SORT", "element constant over unknown object sort '" + e.sort + "'");
      return "";
    }
    if (e.index < 0) {
      error("E-SORT", "negative element index in '" + toString(a) + "'");
      return "";
    }
    return e.sort;
  }

  // returns value sort for enum-sorted terms, "obj:<sort>" for object terms
  std::string termSort(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Obj: {
        std::string s = argSort(t.obj);
        return s.empty() ? "" : "obj:" + s;
      }
      case Term::Kind::Value: {
        const Sort* s = sig.sortOfValue(t.value);
        if (!s) {
          error("E-UNKNOWN-SYMBOL", "unknown enum value '" + t.value + "'");
          return "";
        }
        return s->name;
      }
      case Term::Kind::App: {
        std::vector<std::string> expected;
        std::string value_sort;
        if (const StateFn* f = sig.findStateFn(t.fn)) {
          expected = {f->arg_sort};
          value_sort = f->value_sort;
        } else if (const RigidParam* p = sig.findParam(t.fn)) {
          if (t.primed) {
            error("E-PRIME", "rigid parameter '" + t.fn + "' cannot be primed");
            return "";
          }
          expected = p->arg_sorts;
          value_sort = p->value_sort;
        } else {
          error("E-UNKNOWN-SYMBOL", "unknown function '" + t.fn + "' in '" + toString(t) + "'");
          return "";
        }
        if (t.args.size() != expected.size()) {
          error("E-SORT", "function '" + t.fn + "' expects " +
                              std::to_string(expected.size()) + " argument(s) in '" +
                              toString(t) + "'");
          return "";
        }
        for (size_t i = 0; i < expected.size(); ++i) {
          std::string got = argSort(t.args[i]);
          if (got.empty()) return "";
          if (got != expected[i]) {
            error("E-SORT", "argument " + std::to_string(i + 1) + " of '" + toString(t) +
                                "' has sort " + got + ", expected " + expected[i]);
            return "";
          }
        }
        return value_sort;
      }
    }
    return "";
  }

  void check(const Formula& f) {
    if (fail) return;
    switch (f.kind) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        return;
      case Formula::Kind::Eq: {
        std::string a = termSort(f.lhs);
        if (fail) return;
        std::string b = termSort(f.rhs);
        if (fail) return;
        if (a != b)
          error("E-SORT", "equality '" + toString(f.lhs) + " = " + toString(f.rhs) +
                              "' compares sorts " + a + " and " + b);
        return;
      }
      case Formula::Kind::Rel: {
        const RigidRelation* r = sig.findRelation(f.rel);
        if (!r) {
          error("E-UNKNOWN-SYMBOL", "unknown relation '" + f.rel + "'");
          return;
        }
        if (f.args.size() != r->arg_sorts.size()) {
          error("E-SORT", "relation '" + f.rel + "' expects " +
                              std::to_string(r->arg_sorts.size()) + " argument(s)");
          return;
        }
        for (size_t i = 0; i < f.args.size(); ++i) {
          std::string got = argSort(f.args[i]);
          if (fail) return;
          if (got != r->arg_sorts[i]) {
            error("E-SORT", "argument " + std::to_string(i + 1) + " of relation '" +
                                f.rel + "' has sort " + got + ", expected " +
                                r->arg_sorts[i]);
            return;
          }
        }
        return;
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const Sort* s = sig.findSort(f.var_sort);
        if (!s || s->kind != SortKind::Object) {
          error("E-SORT", "quantifier over non-object sort '" + f.var_sort + "'");
          return;
        }
        if (scope.count(f.var)) {
          error("E-SHADOW", "variable '" + f.var + "' rebound in nested quantifier");
          return;
        }
        scope[f.var] = f.var_sort;
        check(*f.kids[0]);
        scope.erase(f.var);
        return;
      }
      default:
        for (const auto& k : f.kids) check(*k);
        return;
    }
  }
};

}  // namespace

std::optional<Diagnostic> sortCheck(const Formula& f, const Signature& sig,
                                    const std::map<std::string, std::string>& free_vars) {
  SortChecker c{sig, free_vars, std::nullopt};
  for (const auto& [name, sort] : free_vars) {
    const Sort* s = sig.findSort(sort);
    if (!s) return Diagnostic{std::nullopt, "E-UNKNOWN-SORT",
                              "free variable '" + name + "' declared with unknown sort '" +
                                  sort + "'"};
  }
  c.check(f);
  return c.fail;
}

}  // namespace ilock
