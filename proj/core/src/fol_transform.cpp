#include "ilock/fol_transform.hpp"

#include <algorithm>
#include <set>

namespace ilock {

// ---------------------------------------------------------------------------
// NNF

namespace {

FormulaPtr nnfRec(const FormulaPtr& f, bool negate) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::True:
      return negate ? mkFalse() : mkTrue();
    case K::False:
      return negate ? mkTrue() : mkFalse();
    case K::Eq:
    case K::Rel:
      return negate ? mkNot(f) : f;
    case K::Not:
      return nnfRec(f->kids[0], !negate);
    case K::And:
    case K::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(nnfRec(k, negate));
      bool isAnd = (f->kind == K::And) != negate;
      return isAnd ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case K::Implies: {
      // a -> b  ==  !a || b
      auto na = nnfRec(f->kids[0], !negate);
      auto nb = nnfRec(f->kids[1], negate);
      if (!negate) return mkOr({na, nb});
      return mkAnd({na, nb});
    }
    case K::Forall:
    case K::Exists: {
      bool universal = (f->kind == K::Forall) != negate;
      auto body = nnfRec(f->kids[0], negate);
      return universal ? mkForall(f->var, f->var_sort, body)
                       : mkExists(f->var, f->var_sort, body);
    }
  }
  return f;
}

}  // namespace

FormulaPtr nnf(const FormulaPtr& f) { return nnfRec(f, false); }

// ---------------------------------------------------------------------------
// Prenex

namespace {

struct PrenexState {
  std::set<std::string> used;

  std::string freshen(const std::string& base) {
    if (!used.count(base)) {
      used.insert(base);
      return base;
    }
    for (int i = 1;; ++i) {
      std::string cand = base + "_" + std::to_string(i);
      if (!used.count(cand)) {
        used.insert(cand);
        return cand;
      }
    }
  }

  // child result: its own prefix queue (outside-in) + matrix
  struct Part {
    std::vector<Quantifier> prefix;
    FormulaPtr matrix;
  };

  Part pull(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Forall:
      case K::Exists: {
        std::string name = freshen(f->var);
        FormulaPtr body = f->kids[0];
        if (name != f->var) body = substitute(body, f->var, VarRef{name});
        Part inner = pull(body);
        Quantifier q{f->kind == K::Forall, name, f->var_sort};
        inner.prefix.insert(inner.prefix.begin(), q);
        return inner;
      }
      case K::And:
      case K::Or: {
        std::vector<Part> parts;
        for (const auto& k : f->kids) parts.push_back(pull(k));
        // merge prefixes: repeatedly drain existential fronts from every
        // child, then universal fronts, minimizing alternations so that
        // conjunctions of ∃*∀* pieces stay in ∃*∀*
        Part out;
        std::vector<size_t> pos(parts.size(), 0);
        bool want_exists = true;
        auto remaining = [&] {
          for (size_t i = 0; i < parts.size(); ++i)
            if (pos[i] < parts[i].prefix.size()) return true;
          return false;
        };
        while (remaining()) {
          bool progressed = false;
          for (size_t i = 0; i < parts.size(); ++i) {
            while (pos[i] < parts[i].prefix.size() &&
                   parts[i].prefix[pos[i]].universal != want_exists) {
              out.prefix.push_back(parts[i].prefix[pos[i]]);
              ++pos[i];
              progressed = true;
            }
          }
          if (!progressed) want_exists = !want_exists;
        }
        std::vector<FormulaPtr> matrices;
        for (auto& p : parts) matrices.push_back(p.matrix);
        out.matrix = f->kind == K::And ? mkAnd(std::move(matrices))
                                       : mkOr(std::move(matrices));
        return out;
      }
      default:
        return Part{{}, f};
    }
  }
};

}  // namespace

Prenexed prenex(const FormulaPtr& f) {
  FormulaPtr n = nnf(f);
  PrenexState st;
  // seed with free names only; sibling binders that collide once hoisted to
  // the shared prefix are renamed by freshen as they are pulled
  for (const auto& v : freeVars(*n)) st.used.insert(v);
  auto part = st.pull(n);
  return Prenexed{std::move(part.prefix), part.matrix};
}

FormulaPtr Prenexed::toFormula() const {
  FormulaPtr out = matrix;
  for (size_t i = prefix.size(); i-- > 0;) {
    const Quantifier& q = prefix[i];
    out = q.universal ? mkForall(q.var, q.sort, out) : mkExists(q.var, q.sort, out);
  }
  return out;
}

std::map<std::string, int> Prenexed::existentialCounts() const {
  std::map<std::string, int> out;
  for (const auto& q : prefix)
    if (!q.universal) out[q.sort]++;
  return out;
}

bool Prenexed::isExistsForall() const {
  bool seen_universal = false;
  for (const auto& q : prefix) {
    if (q.universal)
      seen_universal = true;
    else if (seen_universal)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// prime / unprime

namespace {

Term primeTerm(const Term& t, const Signature& sig) {
  if (t.kind != Term::Kind::App) return t;
  if (t.primed) throw Error("prime: input already mentions primed '" + t.fn + "'");
  Term out = t;
  if (sig.stateFnId(t.fn) >= 0) out.primed = true;
  return out;
}

}  // namespace

FormulaPtr prime(const FormulaPtr& f, const Signature& sig) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::True:
    case K::False:
    case K::Rel:
      return f;
    case K::Eq:
      return mkEq(primeTerm(f->lhs, sig), primeTerm(f->rhs, sig));
    case K::Not:
      return mkNot(prime(f->kids[0], sig));
    case K::And:
    case K::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(prime(k, sig));
      return f->kind == K::And ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case K::Implies:
      return mkImplies(prime(f->kids[0], sig), prime(f->kids[1], sig));
    case K::Forall:
      return mkForall(f->var, f->var_sort, prime(f->kids[0], sig));
    case K::Exists:
      return mkExists(f->var, f->var_sort, prime(f->kids[0], sig));
  }
  return f;
}

FormulaPtr unprime(const FormulaPtr& f) {
  using K = Formula::Kind;
  auto unprimeTerm = [](const Term& t) {
    Term out = t;
    out.primed = false;
    return out;
  };
  switch (f->kind) {
    case K::True:
    case K::False:
    case K::Rel:
      return f;
    case K::Eq:
      return mkEq(unprimeTerm(f->lhs), unprimeTerm(f->rhs));
    case K::Not:
      return mkNot(unprime(f->kids[0]));
    case K::And:
    case K::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(unprime(k));
      return f->kind == K::And ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case K::Implies:
      return mkImplies(unprime(f->kids[0]), unprime(f->kids[1]));
    case K::Forall:
      return mkForall(f->var, f->var_sort, unprime(f->kids[0]));
    case K::Exists:
      return mkExists(f->var, f->var_sort, unprime(f->kids[0]));
  }
  return f;
}

// ---------------------------------------------------------------------------
// simplify

FormulaPtr simplify(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Not: {
      auto k = simplify(f->kids[0]);
      if (k->kind == K::True) return mkFalse();
      if (k->kind == K::False) return mkTrue();
      if (k->kind == K::Not) return k->kids[0];
      return mkNot(k);
    }
    case K::And:
    case K::Or: {
      bool isAnd = f->kind == K::And;
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) {
        auto s = simplify(k);
        if (s->kind == (isAnd ? K::True : K::False)) continue;
        if (s->kind == (isAnd ? K::False : K::True)) return isAnd ? mkFalse() : mkTrue();
        // flatten nested same-kind nodes
        if (s->kind == f->kind) {
          for (const auto& g : s->kids) kids.push_back(g);
        } else {
          kids.push_back(s);
        }
      }
      return isAnd ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case K::Implies: {
      auto a = simplify(f->kids[0]);
      auto b = simplify(f->kids[1]);
      if (a->kind == K::False || b->kind == K::True) return mkTrue();
      if (a->kind == K::True) return b;
      if (b->kind == K::False) return mkNot(a);
      return mkImplies(a, b);
    }
    case K::Forall:
    case K::Exists: {
      auto body = simplify(f->kids[0]);
      // a quantifier whose body ignores the variable still depends on domain
      // emptiness, so it is kept as-is
      return f->kind == K::Forall ? mkForall(f->var, f->var_sort, body)
                                  : mkExists(f->var, f->var_sort, body);
    }
    default:
      return f;
  }
}

}  // namespace ilock
