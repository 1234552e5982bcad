#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ilock/fol_eval.hpp"
#include "ilock/fol_transform.hpp"
#include "support/test_sig.hpp"

using namespace ilock;
using namespace ilock::test;

TEST_CASE("expansion of a universal over two tracks is a 2-atom conjunction") {
  auto f = mkForall("t", "track", mkEq(tApp1("trackState", "t"), tVal("free")));
  auto e = expandQuantifiers(f, {{"track", 2}, {"route", 1}});
  REQUIRE(e->kind == Formula::Kind::And);
  CHECK(e->kids.size() == 2);
  CHECK(toString(e->kids[0]) == "trackState[@track0] = free");
}

TEST_CASE("existential over an empty domain expands to false") {
  auto f = mkExists("r", "route", mkTrue());
  auto e = expandQuantifiers(f, {{"route", 0}, {"track", 1}});
  CHECK(e->kind == Formula::Kind::False);
}

TEST_CASE("eval agrees with expansion on the activation step formula") {
  auto sig = routeTrackSig();
  std::map<std::string, int> sizes{{"route", 2}, {"track", 2}};
  auto expanded = expandQuantifiers(refActivate(), sizes);
  for (int i = 0; i < 200; ++i) {
    Rng rng(2000 + i);
    Structure m = randomStructure(rng, sig, sizes, true);
    CHECK(eval(refActivate(), m) == eval(expanded, m));
  }
}

TEST_CASE("eval agrees with expansion on random formulas") {
  auto sig = routeTrackSig();
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Rng rng(i);
    FormulaGen gen(rng, sig, false);
    auto f = gen.closed(1 + static_cast<int>(rng.below(4)));
    std::map<std::string, int> sizes{{"route", static_cast<int>(rng.below(4))},
                                     {"track", static_cast<int>(rng.below(4))}};
    Structure m = randomStructure(rng, sig, sizes, false);
    auto e = expandQuantifiers(f, sizes);
    CHECK(eval(f, m) == eval(e, m));
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("prenex of the negated property surfaces the inner existential") {
  auto neg = mkNot(refSecureStation());
  auto p = prenex(neg);
  REQUIRE(p.prefix.size() == 3);
  for (const auto& q : p.prefix) CHECK_FALSE(q.universal);
  auto counts = p.existentialCounts();
  CHECK(counts["route"] == 2);
  CHECK(counts["track"] == 1);
  CHECK(freeVars(*p.matrix).size() == 3);
  CHECK(p.isExistsForall());
}

TEST_CASE("prenex of a quantifier-free formula is the identity") {
  auto f = mkAnd({mkEq(tVar("x"), tVar("y")), mkTrue()});
  auto p = prenex(f);
  CHECK(p.prefix.empty());
}

TEST_CASE("consecution query prenexes to an exists-forall prefix") {
  auto sig = routeTrackSig();
  auto inv = refSecureStation();
  auto query = mkAnd({inv, refActivate(), mkNot(prime(inv, *sig))});
  auto p = prenex(query);
  CHECK(p.isExistsForall());
  auto counts = p.existentialCounts();
  CHECK(counts["route"] == 3);  // acting route + two from the negated property
  CHECK(counts["track"] == 1);
}

TEST_CASE("prenex preserves evaluation on nonempty structures") {
  auto sig = routeTrackSig();
  for (int i = 0; i < 200; ++i) {
    Rng rng(5000 + i);
    FormulaGen gen(rng, sig, false);
    auto f = gen.closed(1 + static_cast<int>(rng.below(4)));
    std::map<std::string, int> sizes{{"route", 1 + static_cast<int>(rng.below(3))},
                                     {"track", 1 + static_cast<int>(rng.below(3))}};
    Structure m = randomStructure(rng, sig, sizes, false);
    auto p = prenex(f);
    CHECK(eval(f, m) == eval(p.toFormula(), m));
    // matrix really is quantifier-free
    struct {
      bool found = false;
      void scan(const Formula& g) {
        if (g.kind == Formula::Kind::Forall || g.kind == Formula::Kind::Exists) found = true;
        for (const auto& k : g.kids) scan(*k);
      }
    } qf;
    qf.scan(*p.matrix);
    CHECK_FALSE(qf.found);
  }
}

TEST_CASE("prime marks state functions and leaves rigid symbols") {
  auto sig = routeTrackSig();
  auto f = mkForall("r", "route", mkEq(tApp1("routeState", "r"), tVal("active")));
  auto pf = prime(f, *sig);
  CHECK(toString(pf) == "forall r : route. routeState'[r] = active");

  auto rel = mkForall(
      "r", "route",
      mkForall("t", "track",
               mkAnd({mkRel("Uses", {VarRef{"t"}, VarRef{"r"}}),
                      mkEq(tApp("reqDir", {VarRef{"r"}, VarRef{"t"}}), tVal("d1"))})));
  CHECK(structurallyEqual(*prime(rel, *sig), *rel));  // rigid only: unchanged

  CHECK_THROWS_AS(prime(pf, *sig), Error);  // already primed
}

TEST_CASE("unprime undoes prime structurally") {
  auto sig = routeTrackSig();
  for (int i = 0; i < 100; ++i) {
    Rng rng(900 + i);
    FormulaGen gen(rng, sig, false);
    auto f = gen.closed(3);
    CHECK(structurallyEqual(*unprime(prime(f, *sig)), *f));
  }
}

TEST_CASE("primed formulas evaluate against the post-state") {
  auto sig = routeTrackSig();
  auto f = refInit();
  auto pf = prime(f, *sig);
  Rng rng(42);
  Structure m = randomStructure(rng, sig, {{"route", 2}, {"track", 2}}, true);
  CHECK(eval(pf, m) == eval(f, m.primedAsCurrent()));
}

TEST_CASE("simplify folds constants and preserves evaluation") {
  auto sig = routeTrackSig();
  CHECK(simplify(mkAnd({mkTrue(), mkFalse()}))->kind == Formula::Kind::False);
  CHECK(simplify(mkImplies(mkFalse(), mkFalse()))->kind == Formula::Kind::True);
  for (int i = 0; i < 100; ++i) {
    Rng rng(7000 + i);
    FormulaGen gen(rng, sig, false);
    auto f = gen.closed(4);
    std::map<std::string, int> sizes{{"route", static_cast<int>(rng.below(3))},
                                     {"track", static_cast<int>(rng.below(3))}};
    Structure m = randomStructure(rng, sig, sizes, false);
    CHECK(eval(f, m) == eval(simplify(f), m));
  }
}

TEST_CASE("nnf removes implications and pushes negations to atoms") {
  auto sig = routeTrackSig();
  for (int i = 0; i < 100; ++i) {
    Rng rng(8000 + i);
    FormulaGen gen(rng, sig, false);
    auto f = gen.closed(4);
    auto n = nnf(f);
    struct {
      bool bad = false;
      void scan(const Formula& g) {
        if (g.kind == Formula::Kind::Implies) bad = true;
        if (g.kind == Formula::Kind::Not && !g.kids[0]->isAtom()) bad = true;
        for (const auto& k : g.kids) scan(*k);
      }
    } shape;
    shape.scan(*n);
    CHECK_FALSE(shape.bad);
    std::map<std::string, int> sizes{{"route", static_cast<int>(rng.below(3))},
                                     {"track", static_cast<int>(rng.below(3))}};
    Structure m = randomStructure(rng, sig, sizes, false);
    CHECK(eval(f, m) == eval(n, m));
  }
}
