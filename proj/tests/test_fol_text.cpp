#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ilock/fol_eval.hpp"
#include "ilock/fol_text.hpp"
#include "support/test_sig.hpp"

using namespace ilock;
using namespace ilock::test;

TEST_CASE("parses quantifiers, connectives and applications") {
  auto sig = routeTrackSig();
  auto r = parseFormula(
      "forall r : route. forall t : track. Uses(t, r) -> "
      "(trackState[t] = free && direction[t] = reqDir(r, t))",
      *sig);
  REQUIRE(r.ok());
  CHECK(toString(r.formula) ==
        "forall r : route. forall t : track. Uses(t, r) -> "
        "trackState[t] = free && direction[t] = reqDir(r, t)");
}

TEST_CASE("parses primed applications and inequalities") {
  auto sig = routeTrackSig();
  auto r = parseFormula("forall r : route. routeState'[r] != active", *sig);
  REQUIRE(r.ok());
  CHECK(mentionsPrimed(*r.formula));
}

TEST_CASE("print-parse round trip is structurally stable") {
  auto sig = routeTrackSig();
  for (int i = 0; i < 200; ++i) {
    Rng rng(300 + i);
    FormulaGen gen(rng, sig, true);
    auto f = gen.closed(1 + static_cast<int>(rng.below(4)));
    auto r = parseFormula(toString(f), *sig);
    REQUIRE_MESSAGE(r.ok(), toString(f));
    CHECK_MESSAGE(structurallyEqual(*f, *r.formula), toString(f));
  }
}

TEST_CASE("reference formulas survive the round trip") {
  auto sig = routeTrackSig();
  for (const auto& f : {refInit(), refActivate(), refSecureStation(), refLemma()}) {
    auto r = parseFormula(toString(f), *sig);
    REQUIRE(r.ok());
    CHECK(structurallyEqual(*f, *r.formula));
  }
}

TEST_CASE("reports diagnostics with positions") {
  auto sig = routeTrackSig();
  auto r = parseFormula("forall r : route. bogus[r] = active", *sig);
  CHECK_FALSE(r.ok());
  REQUIRE_FALSE(r.diags.empty());
  CHECK(r.diags[0].code == "E-UNKNOWN-SYMBOL");

  r = parseFormula("forall r : route. routeState[r] = ", *sig);
  CHECK_FALSE(r.ok());
  CHECK(r.diags[0].code == "E-PARSE");
  CHECK(r.diags[0].loc.has_value());

  // ill-sorted input is caught after parsing
  r = parseFormula("forall t : track. routeState[t] = active", *sig);
  CHECK_FALSE(r.ok());
  CHECK(r.diags[0].code == "E-SORT");
}

TEST_CASE("free variables may be declared by the caller") {
  auto sig = routeTrackSig();
  auto r = parseFormula("trackState[t] = free", *sig, {{"t", "track"}});
  REQUIRE(r.ok());
  Structure m(sig);
  m.setDomain("route", 0);
  m.setDomain("track", 1);
  m.setState("trackState", {0});
  CHECK(eval(r.formula, m, {{"t", 0}}));
}

TEST_CASE("property file with macro expands to the reference property") {
  auto sig = routeTrackSig();
  auto pf = parsePropertyFile(
      "# two incompatible routes are never active together\n"
      "macro NotCompatible(r1 : route, r2 : route) :=\n"
      "  r1 != r2 && exists t : track. (Uses(t, r1) && Uses(t, r2)) ;\n"
      "property secure-station :=\n"
      "  forall r1 : route. forall r2 : route. NotCompatible(r1, r2) ->\n"
      "    !(routeState[r1] = active && routeState[r2] = active) ;\n",
      *sig);
  REQUIRE(pf.ok());
  CHECK(pf.name == "secure-station");
  CHECK(structurallyEqual(*pf.formula, *refSecureStation()));
  CHECK(pf.macros.size() == 1);
}

TEST_CASE("macro expansion freshens captured binders") {
  auto sig = routeTrackSig();
  auto pf = parsePropertyFile(
      "macro UsedBySomething(t : track) := exists r : route. Uses(t, r) ;\n"
      "property p := forall r : route. forall t : track. "
      "UsedBySomething(t) -> routeState[r] = active ;\n",
      *sig);
  REQUIRE(pf.ok());
  CHECK_FALSE(sortCheck(*pf.formula, *sig).has_value());
}

TEST_CASE("unknown macro is a diagnostic") {
  auto sig = routeTrackSig();
  auto pf = parsePropertyFile("property p := forall r : route. Nope(r, r) ;", *sig);
  CHECK_FALSE(pf.ok());
}
