#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ilock/fol.hpp"
#include "ilock/fol_eval.hpp"
#include "support/test_sig.hpp"

using namespace ilock;
using namespace ilock::test;

namespace {

// two tracks free, one route inactive, no links
Structure smallStructure(SignaturePtr sig) {
  Structure m(sig);
  m.setDomain("route", 1);
  m.setDomain("track", 2);
  m.setRelationTuples("Uses", {});
  m.setState("trackState", {0, 0});   // free, free
  m.setState("routeState", {0});      // inactive
  m.setState("flag", {0});
  m.setParam("direction", {0, 0});
  m.setParam("reqDir", {0, 0});
  return m;
}

}  // namespace

TEST_CASE("signature rejects malformed declarations") {
  Signature sig;
  sig.addSort({"route", SortKind::Object, {}});
  sig.addSort({"{a,b}", SortKind::Enum, {"a", "b"}});
  CHECK_THROWS_AS(sig.addSort({"route", SortKind::Object, {}}), Error);
  CHECK_THROWS_AS(sig.addSort({"{a,c}", SortKind::Enum, {"a", "c"}}), Error);  // reuses a
  CHECK_THROWS_AS(sig.addSort({"{}", SortKind::Enum, {}}), Error);
  CHECK_THROWS_AS(sig.addStateFn({"f", "nope", "{a,b}"}), Error);
  CHECK_THROWS_AS(sig.addStateFn({"f", "{a,b}", "{a,b}"}), Error);  // arg must be object
  sig.addStateFn({"f", "route", "{a,b}"});
  CHECK_THROWS_AS(sig.addRelation({"f", {"route"}}), Error);  // name clash
}

TEST_CASE("sortCheck accepts the initial formula") {
  auto sig = routeTrackSig();
  CHECK_FALSE(sortCheck(*refInit(), *sig).has_value());
  CHECK_FALSE(sortCheck(*refSecureStation(), *sig).has_value());
  CHECK_FALSE(sortCheck(*refActivate(), *sig).has_value());
  CHECK_FALSE(sortCheck(*refLemma(), *sig).has_value());
}

TEST_CASE("sortCheck flags sort mismatches") {
  auto sig = routeTrackSig();
  // routeState applied to a track variable
  auto bad = mkForall("t", "track", mkEq(tApp1("routeState", "t"), tVal("active")));
  auto d = sortCheck(*bad, *sig);
  REQUIRE(d.has_value());
  CHECK(d->code == "E-SORT");

  // equality across enum sorts
  auto cross = mkForall(
      "t", "track", mkEq(tApp1("trackState", "t"), tVal("active")));
  d = sortCheck(*cross, *sig);
  REQUIRE(d.has_value());
  CHECK(d->code == "E-SORT");
}

TEST_CASE("sortCheck flags shadowing and unknown symbols") {
  auto sig = routeTrackSig();
  auto shadow = mkForall(
      "r", "route",
      mkForall("r", "route", mkEq(tApp1("routeState", "r"), tVal("active"))));
  auto d = sortCheck(*shadow, *sig);
  REQUIRE(d.has_value());
  CHECK(d->code == "E-SHADOW");

  auto unknown = mkForall("r", "route", mkEq(tApp1("bogus", "r"), tVal("active")));
  d = sortCheck(*unknown, *sig);
  REQUIRE(d.has_value());
  CHECK(d->code == "E-UNKNOWN-SYMBOL");

  auto unbound = mkEq(tApp1("routeState", "r"), tVal("active"));
  d = sortCheck(*unbound, *sig);
  REQUIRE(d.has_value());
  CHECK(d->code == "E-UNBOUND");
  CHECK_FALSE(sortCheck(*unbound, *sig, {{"r", "route"}}).has_value());
}

TEST_CASE("eval on the small structure") {
  auto sig = routeTrackSig();
  Structure m = smallStructure(sig);
  CHECK(eval(refInit(), m));

  // forall over an empty domain holds
  Structure empty(sig);
  empty.setDomain("route", 0);
  empty.setDomain("track", 0);
  empty.setRelationTuples("Uses", {});
  empty.setState("routeState", {});
  empty.setState("trackState", {});
  CHECK(eval(mkForall("r", "route", mkFalse()), empty));
  CHECK_FALSE(eval(mkExists("r", "route", mkTrue()), empty));
}

TEST_CASE("NotCompatible holds for routes sharing a track") {
  auto sig = routeTrackSig();
  Structure m(sig);
  m.setDomain("route", 2);
  m.setDomain("track", 1);
  m.setRelationTuples("Uses", {{0, 0}, {0, 1}});  // track0 used by both routes
  auto phi = refNotCompatible("r1", "r2");
  CHECK(eval(phi, m, {{"r1", 0}, {"r2", 1}}));
  CHECK_FALSE(eval(phi, m, {{"r1", 0}, {"r2", 0}}));  // same route
}

TEST_CASE("eval reports missing interpretations and environments") {
  auto sig = routeTrackSig();
  Structure m(sig);
  m.setDomain("route", 1);
  m.setDomain("track", 1);
  // no routeState interpretation
  CHECK_THROWS_AS(eval(mkForall("r", "route", mkEq(tApp1("routeState", "r"), tVal("active"))), m),
                  Error);
  // unbound free variable without env
  CHECK_THROWS_AS(eval(mkEq(tApp1("routeState", "r"), tVal("active")), m), Error);
  // primed use without primed interpretation
  Structure m2 = smallStructure(sig);
  CHECK_THROWS_AS(
      eval(mkForall("r", "route", mkEq(tApp1("routeState", "r", true), tVal("active"))), m2),
      Error);
}

TEST_CASE("eval is deterministic") {
  auto sig = routeTrackSig();
  Rng rng(7);
  FormulaGen gen(rng, sig, false);
  for (int i = 0; i < 50; ++i) {
    auto f = gen.closed(4);
    Rng srng(100 + i);
    Structure m = randomStructure(srng, sig, {{"route", 2}, {"track", 2}}, false);
    CHECK(eval(f, m) == eval(f, m));
  }
}

TEST_CASE("structural equality and printing") {
  auto a = refSecureStation();
  auto b = refSecureStation();
  CHECK(structurallyEqual(*a, *b));
  CHECK_FALSE(structurallyEqual(*a, *refLemma()));
  CHECK(toString(a) == toString(b));
  // printing of a negated equality uses !=
  CHECK(toString(mkNeq(tVar("x"), tVar("y"))) == "x != y");
}

TEST_CASE("substitute leaves shadowed binders alone") {
  auto inner = mkForall("r", "route", mkEq(tApp1("routeState", "r"), tVal("active")));
  auto subst = substitute(inner, "r", VarRef{"q"});
  CHECK(structurallyEqual(*inner, *subst));
}

TEST_CASE("collectSymbols and freeVars") {
  auto f = refActivate();
  std::vector<std::string> syms;
  collectSymbols(*f, syms);
  CHECK(std::find(syms.begin(), syms.end(), "routeState") != syms.end());
  CHECK(std::find(syms.begin(), syms.end(), "trackState") != syms.end());
  CHECK(std::find(syms.begin(), syms.end(), "Uses") != syms.end());
  CHECK(freeVars(*f).empty());
  auto open_atom = refNotCompatible("r1", "r2");
  auto fv = freeVars(*open_atom);
  CHECK(fv == std::vector<std::string>{"r1", "r2"});
}
