#pragma once

// Shared test fixtures: the route/track signature used across unit tests,
// hand-built reference formulas for it, and seeded random generators for
// property-style tests.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ilock/fol.hpp"
#include "ilock/fol_eval.hpp"
#include "ilock/rng.hpp"

namespace ilock::test {

// Signature of the bundled interlocking model: routes lock track segments,
// each link carries a required direction.
inline SignaturePtr routeTrackSig() {
  auto sig = std::make_shared<Signature>();
  sig->addSort({"route", SortKind::Object, {}});
  sig->addSort({"track", SortKind::Object, {}});
  sig->addSort({"{inactive,active}", SortKind::Enum, {"inactive", "active"}});
  sig->addSort({"{free,locked}", SortKind::Enum, {"free", "locked"}});
  sig->addSort({"{d1,d2}", SortKind::Enum, {"d1", "d2"}});
  sig->addSort({"{false,true}", SortKind::Enum, {"false", "true"}});
  sig->addStateFn({"routeState", "route", "{inactive,active}"});
  sig->addStateFn({"trackState", "track", "{free,locked}"});
  sig->addStateFn({"flag", "route", "{false,true}"});
  sig->addRelation({"Uses", {"track", "route"}});
  sig->addParam({"direction", {"track"}, "{d1,d2}"});
  sig->addParam({"reqDir", {"route", "track"}, "{d1,d2}"});
  return sig;
}

// forall t. trackState[t] = free  &&  forall r. routeState[r] = inactive
inline FormulaPtr refInit() {
  return mkAnd({mkForall("t", "track", mkEq(tApp1("trackState", "t"), tVal("free"))),
                mkForall("r", "route", mkEq(tApp1("routeState", "r"), tVal("inactive")))});
}

// The activation step over the two state functions and Uses only:
// exists r. routeState[r] = inactive
//   && forall t1. Uses(t1, r) -> trackState[t1] = free
//   && routeState'[r] = active
//   && forall s. s != r -> routeState'[s] = routeState[s]
//   && forall t. (Uses(t, r) -> trackState'[t] = locked)
//             && (!Uses(t, r) -> trackState'[t] = trackState[t])
inline FormulaPtr refActivate() {
  auto r = [] { return VarRef{"r"}; };
  FormulaPtr src = mkEq(tApp1("routeState", "r"), tVal("inactive"));
  FormulaPtr guard = mkForall(
      "t1", "track",
      mkImplies(mkRel("Uses", {VarRef{"t1"}, r()}),
                mkEq(tApp1("trackState", "t1"), tVal("free"))));
  FormulaPtr set_self = mkEq(tApp1("routeState", "r", true), tVal("active"));
  FormulaPtr frame_routes = mkForall(
      "s", "route",
      mkImplies(mkNeq(tVar("s"), tVar("r")),
                mkEq(tApp1("routeState", "s", true), tApp1("routeState", "s"))));
  FormulaPtr tracks = mkForall(
      "t", "track",
      mkAnd({mkImplies(mkRel("Uses", {VarRef{"t"}, r()}),
                       mkEq(tApp1("trackState", "t", true), tVal("locked"))),
             mkImplies(mkNot(mkRel("Uses", {VarRef{"t"}, r()})),
                       mkEq(tApp1("trackState", "t", true), tApp1("trackState", "t")))}));
  return mkExists("r", "route",
                  mkAnd({src, guard, set_self, frame_routes, tracks}));
}

// r1 != r2 && exists t. Uses(t, r1) && Uses(t, r2)
inline FormulaPtr refNotCompatible(const std::string& r1, const std::string& r2) {
  return mkAnd({mkNeq(tVar(r1), tVar(r2)),
                mkExists("t", "track",
                         mkAnd({mkRel("Uses", {VarRef{"t"}, VarRef{r1}}),
                                mkRel("Uses", {VarRef{"t"}, VarRef{r2}})}))});
}

// forall r1, r2. NotCompatible(r1, r2) ->
//   !(routeState[r1] = active && routeState[r2] = active)
inline FormulaPtr refSecureStation() {
  return mkForall(
      "r1", "route",
      mkForall("r2", "route",
               mkImplies(refNotCompatible("r1", "r2"),
                         mkNot(mkAnd(
                             {mkEq(tApp1("routeState", "r1"), tVal("active")),
                              mkEq(tApp1("routeState", "r2"), tVal("active"))})))));
}

// forall r, t. Uses(t, r) && trackState[t] = free -> routeState[r] != active
inline FormulaPtr refLemma() {
  return mkForall(
      "r", "route",
      mkForall("t", "track",
               mkImplies(mkAnd({mkRel("Uses", {VarRef{"t"}, VarRef{"r"}}),
                                mkEq(tApp1("trackState", "t"), tVal("free"))}),
                         mkNeq(tApp1("routeState", "r"), tVal("active")))));
}

// ---------------------------------------------------------------------------
// Random generators

inline Structure randomStructure(Rng& rng, SignaturePtr sig,
                                 const std::map<std::string, int>& sizes,
                                 bool with_primed) {
  Structure m(sig);
  for (const auto& [sort, n] : sizes) m.setDomain(sort, n);
  for (const auto& rel : sig->relations()) {
    std::vector<uint8_t> table(m.relTableSize(rel.name));
    for (auto& b : table) b = rng.coin() ? 1 : 0;
    m.setRelation(rel.name, std::move(table));
  }
  for (const auto& p : sig->params()) {
    size_t vals = sig->findSort(p.value_sort)->values.size();
    std::vector<uint8_t> table(m.paramTableSize(p.name));
    for (auto& b : table) b = static_cast<uint8_t>(rng.below(vals));
    m.setParam(p.name, std::move(table));
  }
  for (const auto& f : sig->stateFns()) {
    size_t vals = sig->findSort(f.value_sort)->values.size();
    size_t n = static_cast<size_t>(m.domainSize(f.arg_sort));
    std::vector<uint8_t> cur(n), next(n);
    for (auto& b : cur) b = static_cast<uint8_t>(rng.below(vals));
    m.setState(f.name, std::move(cur));
    if (with_primed) {
      for (auto& b : next) b = static_cast<uint8_t>(rng.below(vals));
      m.setPrimed(f.name, std::move(next));
    }
  }
  return m;
}

/// Well-sorted random closed formula over sig. Quantified variables get
/// fresh names; atoms fall back to constants when no variable of a needed
/// sort is in scope.
class FormulaGen {
 public:
  FormulaGen(Rng& rng, SignaturePtr sig, bool allow_primed)
      : rng_(rng), sig_(std::move(sig)), allow_primed_(allow_primed) {}

  FormulaPtr closed(int depth) {
    scope_.clear();
    counter_ = 0;
    return gen(depth);
  }

 private:
  FormulaPtr gen(int depth) {
    if (depth <= 0) return atom();
    switch (rng_.below(6)) {
      case 0:
        return mkNot(gen(depth - 1));
      case 1:
        return mkAnd({gen(depth - 1), gen(depth - 1)});
      case 2:
        return mkOr({gen(depth - 1), gen(depth - 1)});
      case 3:
        return mkImplies(gen(depth - 1), gen(depth - 1));
      default: {
        auto obj_sorts = sig_->objectSortNames();
        std::string sort = obj_sorts[rng_.below(obj_sorts.size())];
        std::string var = "v" + std::to_string(counter_++);
        scope_.emplace_back(var, sort);
        FormulaPtr body = gen(depth - 1);
        scope_.pop_back();
        return rng_.coin() ? mkForall(var, sort, body) : mkExists(var, sort, body);
      }
    }
  }

  // random variable of the sort, or nullopt
  std::optional<std::string> pick(const std::string& sort) {
    std::vector<const std::string*> hits;
    for (const auto& [v, s] : scope_)
      if (s == sort) hits.push_back(&v);
    if (hits.empty()) return std::nullopt;
    return *hits[rng_.below(hits.size())];
  }

  FormulaPtr atom() {
    for (int attempt = 0; attempt < 4; ++attempt) {
      switch (rng_.below(4)) {
        case 0: {  // relation atom
          if (sig_->relations().empty()) break;
          const auto& rel = sig_->relations()[rng_.below(sig_->relations().size())];
          std::vector<ObjArg> args;
          bool ok = true;
          for (const auto& s : rel.arg_sorts) {
            auto v = pick(s);
            if (!v) {
              ok = false;
              break;
            }
            args.push_back(VarRef{*v});
          }
          if (!ok) break;
          return mkRel(rel.name, std::move(args));
        }
        case 1: {  // state fn = constant
          if (sig_->stateFns().empty()) break;
          const auto& fn = sig_->stateFns()[rng_.below(sig_->stateFns().size())];
          auto v = pick(fn.arg_sort);
          if (!v) break;
          const auto& vals = sig_->findSort(fn.value_sort)->values;
          bool primed = allow_primed_ && rng_.coin();
          return mkEq(tApp1(fn.name, *v, primed),
                      tVal(vals[rng_.below(vals.size())]));
        }
        case 2: {  // variable equality
          auto obj_sorts = sig_->objectSortNames();
          std::string sort = obj_sorts[rng_.below(obj_sorts.size())];
          auto a = pick(sort);
          auto b = pick(sort);
          if (!a || !b) break;
          return mkEq(tVar(*a), tVar(*b));
        }
        case 3: {  // param application = constant
          if (sig_->params().empty()) break;
          const auto& p = sig_->params()[rng_.below(sig_->params().size())];
          std::vector<ObjArg> args;
          bool ok = true;
          for (const auto& s : p.arg_sorts) {
            auto v = pick(s);
            if (!v) {
              ok = false;
              break;
            }
            args.push_back(VarRef{*v});
          }
          if (!ok) break;
          const auto& vals = sig_->findSort(p.value_sort)->values;
          return mkEq(tApp(p.name, std::move(args)), tVal(vals[rng_.below(vals.size())]));
        }
      }
    }
    return rng_.coin() ? mkTrue() : mkFalse();
  }

  Rng& rng_;
  SignaturePtr sig_;
  bool allow_primed_;
  std::vector<std::pair<std::string, std::string>> scope_;
  int counter_ = 0;
};

}  // namespace ilock::test
