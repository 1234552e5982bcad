#include "ilock/fol_eval.hpp"

#include <algorithm>
#include <sstream>

namespace ilock {

// ---------------------------------------------------------------------------
// Structure

Structure::Structure(SignaturePtr sig) : sig_(std::move(sig)) {
  domains_.resize(sig_->sorts().size(), 0);
  for (size_t i = 0; i < sig_->sorts().size(); ++i)
    if (sig_->sorts()[i].kind == SortKind::Enum)
      domains_[i] = static_cast<int>(sig_->sorts()[i].values.size());
  rel_.resize(sig_->relations().size());
  param_.resize(sig_->params().size());
  cur_.resize(sig_->stateFns().size());
  primed_.resize(sig_->stateFns().size());
}

void Structure::setDomain(const std::string& sort, int size) {
  int id = sig_->sortId(sort);
  if (id < 0 || sig_->sorts()[id].kind != SortKind::Object)
    throw Error("structure: unknown object sort '" + sort + "'");
  if (size < 0) throw Error("structure: negative domain size");
  domains_[id] = size;
}

int Structure::domainSize(const std::string& sort) const {
  int id = sig_->sortId(sort);
  if (id < 0) throw Error("structure: unknown sort '" + sort + "'");
  return domains_[id];
}

size_t Structure::tableSize(const std::vector<std::string>& arg_sorts) const {
  size_t n = 1;
  for (const auto& s : arg_sorts) n *= static_cast<size_t>(domainSize(s));
  return n;
}

size_t Structure::tupleIndex(const std::vector<std::string>& arg_sorts,
                             const std::vector<int>& args) const {
  size_t idx = 0;
  for (size_t i = 0; i < arg_sorts.size(); ++i)
    idx = idx * static_cast<size_t>(domainSize(arg_sorts[i])) + static_cast<size_t>(args[i]);
  return idx;
}

size_t Structure::relTableSize(const std::string& name) const {
  const RigidRelation* r = sig_->findRelation(name);
  if (!r) throw Error("structure: unknown relation '" + name + "'");
  return tableSize(r->arg_sorts);
}

size_t Structure::paramTableSize(const std::string& name) const {
  const RigidParam* p = sig_->findParam(name);
  if (!p) throw Error("structure: unknown parameter '" + name + "'");
  return tableSize(p->arg_sorts);
}

void Structure::setRelation(const std::string& name, std::vector<uint8_t> table) {
  int id = sig_->relationId(name);
  if (id < 0) throw Error("structure: unknown relation '" + name + "'");
  if (table.size() != tableSize(sig_->relations()[id].arg_sorts))
    throw Error("structure: relation table size mismatch for '" + name + "'");
  rel_[id] = {false, std::move(table)};
}

void Structure::setRelationTuples(const std::string& name,
                                  const std::vector<std::vector<int>>& tuples) {
  int id = sig_->relationId(name);
  if (id < 0) throw Error("structure: unknown relation '" + name + "'");
  const auto& arg_sorts = sig_->relations()[id].arg_sorts;
  std::vector<uint8_t> table(tableSize(arg_sorts), 0);
  for (const auto& t : tuples) {
    if (t.size() != arg_sorts.size())
      throw Error("structure: tuple arity mismatch for '" + name + "'");
    table[tupleIndex(arg_sorts, t)] = 1;
  }
  rel_[id] = {false, std::move(table)};
}

void Structure::setParam(const std::string& name, std::vector<uint8_t> table) {
  int id = sig_->paramId(name);
  if (id < 0) throw Error("structure: unknown parameter '" + name + "'");
  if (table.size() != tableSize(sig_->params()[id].arg_sorts))
    throw Error("structure: parameter table size mismatch for '" + name + "'");
  param_[id] = {false, std::move(table)};
}

void Structure::setState(const std::string& name, std::vector<uint8_t> values) {
  int id = sig_->stateFnId(name);
  if (id < 0) throw Error("structure: unknown state function '" + name + "'");
  if (values.size() != static_cast<size_t>(domainSize(sig_->stateFns()[id].arg_sort)))
    throw Error("structure: state table size mismatch for '" + name + "'");
  cur_[id] = {false, std::move(values)};
}

void Structure::setPrimed(const std::string& name, std::vector<uint8_t> values) {
  int id = sig_->stateFnId(name);
  if (id < 0) throw Error("structure: unknown state function '" + name + "'");
  if (values.size() != static_cast<size_t>(domainSize(sig_->stateFns()[id].arg_sort)))
    throw Error("structure: primed table size mismatch for '" + name + "'");
  primed_[id] = {false, std::move(values)};
}

bool Structure::hasAnyPrimed() const {
  for (const auto& t : primed_)
    if (!t.missing) return true;
  return false;
}

bool Structure::relAt(int id, const std::vector<int>& args) const {
  const Table& t = rel_[id];
  if (t.missing)
    throw Error("eval: relation '" + sig_->relations()[id].name + "' not interpreted");
  return t.data[tupleIndex(sig_->relations()[id].arg_sorts, args)] != 0;
}

int Structure::paramAt(int id, const std::vector<int>& args) const {
  const Table& t = param_[id];
  if (t.missing)
    throw Error("eval: parameter '" + sig_->params()[id].name + "' not interpreted");
  return t.data[tupleIndex(sig_->params()[id].arg_sorts, args)];
}

int Structure::stateAt(int id, int elem, bool primed) const {
  const Table& t = primed ? primed_[id] : cur_[id];
  if (t.missing)
    throw Error("eval: state function '" + sig_->stateFns()[id].name + "' has no " +
                (primed ? "primed" : "current") + " interpretation");
  return t.data[elem];
}

Structure Structure::primedAsCurrent() const {
  Structure out = *this;
  for (size_t i = 0; i < primed_.size(); ++i) {
    if (!primed_[i].missing) out.cur_[i] = primed_[i];
    out.primed_[i] = Table{};
  }
  return out;
}

Structure Structure::rigidOnly() const {
  Structure out(sig_);
  out.domains_ = domains_;
  out.rel_ = rel_;
  out.param_ = param_;
  return out;
}

std::string Structure::fingerprint() const {
  std::string out;
  auto push = [&out](const Table& t) {
    out += t.missing ? 'm' : 'p';
    out.append(t.data.begin(), t.data.end());
    out += '|';
  };
  for (int d : domains_) out += static_cast<char>(d);
  out += '|';
  for (const auto& t : rel_) push(t);
  for (const auto& t : param_) push(t);
  for (const auto& t : cur_) push(t);
  for (const auto& t : primed_) push(t);
  return out;
}

Structure Structure::permuted(const std::map<int, std::vector<int>>& perms) const {
  auto mapElem = [&perms](int sort_id, int e) {
    auto it = perms.find(sort_id);
    return it == perms.end() ? e : it->second[e];
  };
  Structure out(sig_);
  out.domains_ = domains_;

  auto permuteTable = [&](const std::vector<std::string>& arg_sorts, const Table& in,
                          Table& dst) {
    if (in.missing) return;
    dst.missing = false;
    dst.data.assign(in.data.size(), 0);
    std::vector<int> sort_ids(arg_sorts.size());
    std::vector<int> sizes(arg_sorts.size());
    for (size_t i = 0; i < arg_sorts.size(); ++i) {
      sort_ids[i] = sig_->sortId(arg_sorts[i]);
      sizes[i] = domains_[sort_ids[i]];
    }
    std::vector<int> args(arg_sorts.size(), 0);
    std::vector<int> mapped(arg_sorts.size(), 0);
    size_t total = in.data.size();
    for (size_t flat = 0; flat < total; ++flat) {
      // decode mixed radix
      size_t rem = flat;
      for (size_t i = arg_sorts.size(); i-- > 0;) {
        args[i] = static_cast<int>(rem % static_cast<size_t>(sizes[i]));
        rem /= static_cast<size_t>(sizes[i]);
      }
      for (size_t i = 0; i < arg_sorts.size(); ++i)
        mapped[i] = mapElem(sort_ids[i], args[i]);
      size_t idx = 0;
      for (size_t i = 0; i < arg_sorts.size(); ++i)
        idx = idx * static_cast<size_t>(sizes[i]) + static_cast<size_t>(mapped[i]);
      dst.data[idx] = in.data[flat];
    }
  };

  for (size_t r = 0; r < rel_.size(); ++r)
    permuteTable(sig_->relations()[r].arg_sorts, rel_[r], out.rel_[r]);
  for (size_t p = 0; p < param_.size(); ++p)
    permuteTable(sig_->params()[p].arg_sorts, param_[p], out.param_[p]);
  for (size_t f = 0; f < cur_.size(); ++f) {
    std::vector<std::string> arg{sig_->stateFns()[f].arg_sort};
    permuteTable(arg, cur_[f], out.cur_[f]);
    permuteTable(arg, primed_[f], out.primed_[f]);
  }
  return out;
}

std::string Structure::describe() const {
  std::ostringstream os;
  for (const auto& s : sig_->sorts()) {
    if (s.kind != SortKind::Object) continue;
    int n = domains_[sig_->sortId(s.name)];
    os << "sort " << s.name << " = {";
    for (int i = 0; i < n; ++i) os << (i ? ", " : "") << "@" << s.name << i;
    os << "}\n";
  }
  auto elemName = [this](const std::string& sort, int e) {
    return "@" + sort + std::to_string(e);
  };
  for (size_t r = 0; r < rel_.size(); ++r) {
    if (rel_[r].missing) continue;
    const auto& decl = sig_->relations()[r];
    os << decl.name << " = {";
    bool first = true;
    std::vector<int> sizes;
    for (const auto& s : decl.arg_sorts) sizes.push_back(domainSize(s));
    std::vector<int> args(decl.arg_sorts.size(), 0);
    for (size_t flat = 0; flat < rel_[r].data.size(); ++flat) {
      size_t rem = flat;
      for (size_t i = decl.arg_sorts.size(); i-- > 0;) {
        args[i] = static_cast<int>(rem % sizes[i]);
        rem /= sizes[i];
      }
      if (!rel_[r].data[flat]) continue;
      if (!first) os << ", ";
      first = false;
      os << "(";
      for (size_t i = 0; i < args.size(); ++i)
        os << (i ? ", " : "") << elemName(decl.arg_sorts[i], args[i]);
      os << ")";
    }
    os << "}\n";
  }
  for (size_t p = 0; p < param_.size(); ++p) {
    if (param_[p].missing) continue;
    const auto& decl = sig_->params()[p];
    const Sort* vs = sig_->findSort(decl.value_sort);
    std::vector<int> sizes;
    for (const auto& s : decl.arg_sorts) sizes.push_back(domainSize(s));
    std::vector<int> args(decl.arg_sorts.size(), 0);
    for (size_t flat = 0; flat < param_[p].data.size(); ++flat) {
      size_t rem = flat;
      for (size_t i = decl.arg_sorts.size(); i-- > 0;) {
        args[i] = static_cast<int>(rem % sizes[i]);
        rem /= sizes[i];
      }
      os << decl.name << "(";
      for (size_t i = 0; i < args.size(); ++i)
        os << (i ? ", " : "") << elemName(decl.arg_sorts[i], args[i]);
      os << ") = " << vs->values[param_[p].data[flat]] << "\n";
    }
  }
  auto stateLine = [&](size_t f, const Table& t, const char* suffix) {
    if (t.missing) return;
    const auto& decl = sig_->stateFns()[f];
    const Sort* vs = sig_->findSort(decl.value_sort);
    for (size_t e = 0; e < t.data.size(); ++e)
      os << decl.name << suffix << "[" << elemName(decl.arg_sort, static_cast<int>(e))
         << "] = " << vs->values[t.data[e]] << "\n";
  };
  for (size_t f = 0; f < cur_.size(); ++f) stateLine(f, cur_[f], "");
  for (size_t f = 0; f < primed_.size(); ++f) stateLine(f, primed_[f], "'");
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluator

struct Evaluator::Node {
  enum class Op {
    True,
    False,
    EqObj,     // two object args
    EqVal,     // two evaluated enum terms
    Rel,
    Not,
    And,
    Or,
    Implies,
    Forall,
    Exists,
  };
  Op op = Op::True;

  // object args encoded: slot >= 0 -> env slot; < 0 -> element -(v+1)
  int a = 0, b = 0;

  // enum term descriptors for EqVal sides: fn_id >= 0 with args; fn_id == -1
  // -> constant value in const_val
  struct ETerm {
    int fn_id = -1;
    bool is_param = false;
    bool primed = false;
    int const_val = 0;
    std::vector<int> args;
  };
  ETerm tl, tr;

  int rel_id = -1;
  std::vector<int> rel_args;

  std::vector<std::unique_ptr<Node>> kids;
  int slot = -1;     // quantifier env slot
  int sort_id = -1;  // quantifier domain
  bool universal = true;
};

namespace {
int findBound(const std::vector<std::pair<std::string, std::string>>& bound,
              const std::string& name) {
  for (size_t i = bound.size(); i-- > 0;)
    if (bound[i].first == name) return static_cast<int>(i);
  return -1;
}
}  // namespace

Evaluator::Evaluator(FormulaPtr f, SignaturePtr sig)
    : formula_(std::move(f)), sig_(std::move(sig)) {
  // collect free variables with their sorts by a sort-checking pass: the
  // caller supplies them at eval time, slots are name-sorted for determinism
  std::vector<std::pair<std::string, std::string>> bound;
  // first pass gathers free var names; sorts resolved during compile
  struct FreeScan {
    std::vector<std::string> bound;
    std::map<std::string, bool> free;
    void scanArg(const ObjArg& a) {
      if (const auto* v = std::get_if<VarRef>(&a))
        if (std::find(bound.begin(), bound.end(), v->name) == bound.end())
          free[v->name] = true;
    }
    void scanTerm(const Term& t) {
      if (t.kind == Term::Kind::Obj) scanArg(t.obj);
      if (t.kind == Term::Kind::App)
        for (const auto& a : t.args) scanArg(a);
    }
    void scan(const Formula& f) {
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
          scan(*f.kids[0]);
          bound.pop_back();
          return;
        default:
          for (const auto& k : f.kids) scan(*k);
      }
    }
  } fs;
  fs.scan(*formula_);

  // sorts of free vars are found by unification against first use
  for (const auto& [name, _] : fs.free) free_vars_.emplace_back(name, "");
  // compile resolves sorts; free var slots occupy 0..n-1
  for (auto& fv : free_vars_) bound.emplace_back(fv.first, "");
  slot_count_ = bound.size();
  root_ = compile(*formula_, bound);
  for (size_t i = 0; i < free_vars_.size(); ++i) {
    free_vars_[i].second = bound[i].second;
    if (free_vars_[i].second.empty())
      throw Error("eval: could not determine sort of free variable '" +
                  free_vars_[i].first + "'");
  }
}

int Evaluator::compileArg(const ObjArg& a,
                          std::vector<std::pair<std::string, std::string>>& bound) {
  if (const auto* v = std::get_if<VarRef>(&a)) {
    int slot = findBound(bound, v->name);
    if (slot < 0) throw Error("eval: unbound variable '" + v->name + "'");
    return slot;
  }
  const auto& e = std::get<ElemRef>(a);
  return -(e.index + 1);
}

namespace {
// assigns or checks the sort of the variable behind an encoded arg
void noteArgSort(std::vector<std::pair<std::string, std::string>>& bound,
                 const ObjArg& a, int encoded, const std::string& sort) {
  if (encoded >= 0) {
    auto& entry = bound[encoded];
    if (entry.second.empty())
      entry.second = sort;
    else if (entry.second != sort)
      throw Error("eval: variable '" + entry.first + "' used with sorts " + entry.second +
                  " and " + sort);
  } else {
    const auto& e = std::get<ElemRef>(a);
    if (e.sort != sort)
      throw Error("eval: element constant '" + toString(a) + "' used where sort " + sort +
                  " expected");
  }
}
}  // namespace

std::unique_ptr<Evaluator::Node> Evaluator::compile(
    const Formula& f, std::vector<std::pair<std::string, std::string>>& bound) {
  auto n = std::make_unique<Node>();
  using K = Formula::Kind;
  using Op = Node::Op;
  switch (f.kind) {
    case K::True:
      n->op = Op::True;
      return n;
    case K::False:
      n->op = Op::False;
      return n;
    case K::Eq: {
      auto compileSide = [&](const Term& t, Node::ETerm& out, int& obj_encoded,
                             bool& is_obj) {
        is_obj = false;
        switch (t.kind) {
          case Term::Kind::Obj:
            is_obj = true;
            obj_encoded = compileArg(t.obj, bound);
            return std::string();
          case Term::Kind::Value: {
            const Sort* s = sig_->sortOfValue(t.value);
            if (!s) throw Error("eval: unknown enum value '" + t.value + "'");
            out.fn_id = -1;
            out.const_val = sig_->valueIndex(t.value);
            return s->name;
          }
          case Term::Kind::App: {
            std::vector<std::string> expected;
            std::string value_sort;
            if (int id = sig_->stateFnId(t.fn); id >= 0) {
              out.fn_id = id;
              out.is_param = false;
              out.primed = t.primed;
              expected = {sig_->stateFns()[id].arg_sort};
              value_sort = sig_->stateFns()[id].value_sort;
            } else if (int pid = sig_->paramId(t.fn); pid >= 0) {
              if (t.primed) throw Error("eval: rigid parameter '" + t.fn + "' primed");
              out.fn_id = pid;
              out.is_param = true;
              expected = sig_->params()[pid].arg_sorts;
              value_sort = sig_->params()[pid].value_sort;
            } else {
              throw Error("eval: unknown function '" + t.fn + "'");
            }
            if (t.args.size() != expected.size())
              throw Error("eval: arity mismatch in '" + toString(t) + "'");
            for (size_t i = 0; i < t.args.size(); ++i) {
              int enc = compileArg(t.args[i], bound);
              noteArgSort(bound, t.args[i], enc, expected[i]);
              out.args.push_back(enc);
            }
            return value_sort;
          }
        }
        return std::string();
      };
      bool lobj = false, robj = false;
      int la = 0, ra = 0;
      std::string ls = compileSide(f.lhs, n->tl, la, lobj);
      std::string rs = compileSide(f.rhs, n->tr, ra, robj);
      if (lobj != robj)
        throw Error("eval: equality mixes object and enum terms: " + toString(f));
      if (lobj) {
        n->op = Op::EqObj;
        n->a = la;
        n->b = ra;
        // object-object equality: sorts must agree when known
        std::string elem_sort;
        if (la < 0) elem_sort = std::get<ElemRef>(f.lhs.obj).sort;
        if (ra < 0) elem_sort = std::get<ElemRef>(f.rhs.obj).sort;
        if (la >= 0 && ra >= 0) {
          auto& sa = bound[la].second;
          auto& sb = bound[ra].second;
          if (!sa.empty() && !sb.empty() && sa != sb)
            throw Error("eval: cross-sort variable equality in " + toString(f));
          if (sa.empty()) sa = sb;
          if (sb.empty()) sb = sa;
        } else if (la >= 0 && !elem_sort.empty()) {
          noteArgSort(bound, f.lhs.obj, la, elem_sort);
        } else if (ra >= 0 && !elem_sort.empty()) {
          noteArgSort(bound, f.rhs.obj, ra, elem_sort);
        }
      } else {
        if (ls != rs)
          throw Error("eval: enum equality over different sorts (" + ls + " vs " + rs +
                      ") in " + toString(f));
        n->op = Op::EqVal;
      }
      return n;
    }
    case K::Rel: {
      int id = sig_->relationId(f.rel);
      if (id < 0) throw Error("eval: unknown relation '" + f.rel + "'");
      const auto& decl = sig_->relations()[id];
      if (f.args.size() != decl.arg_sorts.size())
        throw Error("eval: arity mismatch in relation '" + f.rel + "'");
      n->op = Op::Rel;
      n->rel_id = id;
      for (size_t i = 0; i < f.args.size(); ++i) {
        int enc = compileArg(f.args[i], bound);
        noteArgSort(bound, f.args[i], enc, decl.arg_sorts[i]);
        n->rel_args.push_back(enc);
      }
      return n;
    }
    case K::Not:
      n->op = Op::Not;
      n->kids.push_back(compile(*f.kids[0], bound));
      return n;
    case K::And:
    case K::Or:
      n->op = f.kind == K::And ? Op::And : Op::Or;
      for (const auto& k : f.kids) n->kids.push_back(compile(*k, bound));
      return n;
    case K::Implies:
      n->op = Op::Implies;
      n->kids.push_back(compile(*f.kids[0], bound));
      n->kids.push_back(compile(*f.kids[1], bound));
      return n;
    case K::Forall:
    case K::Exists: {
      int sort_id = sig_->sortId(f.var_sort);
      if (sort_id < 0 || sig_->sorts()[sort_id].kind != SortKind::Object)
        throw Error("eval: quantifier over unknown/non-object sort '" + f.var_sort + "'");
      n->op = f.kind == K::Forall ? Op::Forall : Op::Exists;
      n->universal = f.kind == K::Forall;
      n->sort_id = sort_id;
      n->slot = static_cast<int>(bound.size());
      bound.emplace_back(f.var, f.var_sort);
      slot_count_ = std::max(slot_count_, bound.size());
      n->kids.push_back(compile(*f.kids[0], bound));
      bound.pop_back();
      return n;
    }
  }
  throw Error("eval: unhandled formula node");
}

namespace {

int decodeArg(int encoded, const std::vector<int>& slots) {
  return encoded >= 0 ? slots[encoded] : -(encoded + 1);
}

}  // namespace

bool Evaluator::evalSlots(const Structure& m, std::vector<int>& slots) const {
  struct Run {
    const Structure& m;
    const Signature& sig;
    std::vector<int>& slots;

    int evalETerm(const Node::ETerm& t) {
      if (t.fn_id < 0) return t.const_val;
      if (t.is_param) {
        std::vector<int> args(t.args.size());
        for (size_t i = 0; i < t.args.size(); ++i) args[i] = decodeArg(t.args[i], slots);
        return m.paramAt(t.fn_id, args);
      }
      int elem = decodeArg(t.args[0], slots);
      return m.stateAt(t.fn_id, elem, t.primed);
    }

    bool eval(const Node& n) {
      using Op = Node::Op;
      switch (n.op) {
        case Op::True:
          return true;
        case Op::False:
          return false;
        case Op::EqObj:
          return decodeArg(n.a, slots) == decodeArg(n.b, slots);
        case Op::EqVal:
          return evalETerm(n.tl) == evalETerm(n.tr);
        case Op::Rel: {
          std::vector<int> args(n.rel_args.size());
          for (size_t i = 0; i < n.rel_args.size(); ++i)
            args[i] = decodeArg(n.rel_args[i], slots);
          return m.relAt(n.rel_id, args);
        }
        case Op::Not:
          return !eval(*n.kids[0]);
        case Op::And:
          for (const auto& k : n.kids)
            if (!eval(*k)) return false;
          return true;
        case Op::Or:
          for (const auto& k : n.kids)
            if (eval(*k)) return true;
          return false;
        case Op::Implies:
          return !eval(*n.kids[0]) || eval(*n.kids[1]);
        case Op::Forall:
        case Op::Exists: {
          int domain = m.domainSizeById(n.sort_id);
          if (static_cast<size_t>(n.slot) >= slots.size()) slots.resize(n.slot + 1, 0);
          for (int e = 0; e < domain; ++e) {
            slots[n.slot] = e;
            bool v = eval(*n.kids[0]);
            if (n.universal && !v) return false;
            if (!n.universal && v) return true;
          }
          return n.universal;
        }
      }
      return false;
    }
  };
  // element constants must be in range for present domains; out-of-range
  // access would index past a table, so check lazily via table sizes is not
  // enough — decode happens inside tables of exactly domain size.
  Run run{m, *sig_, slots};
  return run.eval(*root_);
}

bool Evaluator::eval(const Structure& m) const {
  if (!free_vars_.empty())
    throw Error("eval: formula has free variables; pass an environment");
  std::vector<int> slots(slot_count_, 0);
  return evalSlots(m, slots);
}

bool Evaluator::eval(const Structure& m, const std::map<std::string, int>& env) const {
  std::vector<int> slots(slot_count_, 0);
  for (size_t i = 0; i < free_vars_.size(); ++i) {
    auto it = env.find(free_vars_[i].first);
    if (it == env.end())
      throw Error("eval: environment missing free variable '" + free_vars_[i].first + "'");
    slots[i] = it->second;
  }
  return evalSlots(m, slots);
}

bool eval(const FormulaPtr& f, const Structure& m, const std::map<std::string, int>& env) {
  Evaluator ev(f, m.sigPtr());
  if (env.empty() && !ev.freeVars().empty())
    throw Error("eval: formula has free variables; pass an environment");
  return ev.freeVars().empty() ? ev.eval(m) : ev.eval(m, env);
}

// ---------------------------------------------------------------------------
// Quantifier expansion

FormulaPtr expandQuantifiers(const FormulaPtr& f,
                             const std::map<std::string, int>& domain_sizes) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Forall:
    case K::Exists: {
      auto it = domain_sizes.find(f->var_sort);
      if (it == domain_sizes.end())
        throw Error("expandQuantifiers: no domain size for sort '" + f->var_sort + "'");
      std::vector<FormulaPtr> parts;
      for (int e = 0; e < it->second; ++e)
        parts.push_back(
            expandQuantifiers(substitute(f->kids[0], f->var, ElemRef{f->var_sort, e}),
                              domain_sizes));
      return f->kind == K::Forall ? mkAnd(std::move(parts)) : mkOr(std::move(parts));
    }
    case K::Not:
      return mkNot(expandQuantifiers(f->kids[0], domain_sizes));
    case K::And:
    case K::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(expandQuantifiers(k, domain_sizes));
      return f->kind == K::And ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case K::Implies:
      return mkImplies(expandQuantifiers(f->kids[0], domain_sizes),
                       expandQuantifiers(f->kids[1], domain_sizes));
    default:
      return f;
  }
}

}  // namespace ilock
