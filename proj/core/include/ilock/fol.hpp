#pragma once

// Many-sorted first-order formulas over a fixed signature shape:
//   - object sorts (domains supplied per instance) and enum sorts (fixed
//     ordered value lists, values globally unique across sorts),
//   - mutable unary state functions  object-sort -> enum-sort,
//   - rigid relations over object sorts,
//   - rigid parameter functions  object-sort tuple -> enum-sort.
// Terms apply functions to variables or indexed domain elements only; there
// is no nesting of applications (functions land in enum sorts, arguments are
// object-sorted).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ilock/diagnostics.hpp"

namespace ilock {

enum class SortKind { Object, Enum };

struct Sort {
  std::string name;
  SortKind kind = SortKind::Object;
  std::vector<std::string> values;  // enum sorts only; ordered, nonempty
};

struct StateFn {
  std::string name;
  std::string arg_sort;    // object sort
  std::string value_sort;  // enum sort
};

struct RigidRelation {
  std::string name;
  std::vector<std::string> arg_sorts;  // object sorts
};

struct RigidParam {
  std::string name;
  std::vector<std::string> arg_sorts;  // object sorts
  std::string value_sort;              // enum sort
};

class Signature {
 public:
  // All add* calls validate referenced sorts and global name/value
  // uniqueness; they throw Error on violation.
  void addSort(Sort s);
  void addStateFn(StateFn f);
  void addRelation(RigidRelation r);
  void addParam(RigidParam p);

  int sortId(const std::string& name) const;  // -1 if absent
  int stateFnId(const std::string& name) const;
  int relationId(const std::string& name) const;
  int paramId(const std::string& name) const;

  const Sort* findSort(const std::string& name) const;
  const StateFn* findStateFn(const std::string& name) const;
  const RigidRelation* findRelation(const std::string& name) const;
  const RigidParam* findParam(const std::string& name) const;

  /// Enum sort owning a globally scoped value name, or nullptr.
  const Sort* sortOfValue(const std::string& value) const;
  /// Index of value within its enum sort; -1 if unknown.
  int valueIndex(const std::string& value) const;

  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<StateFn>& stateFns() const { return state_fns_; }
  const std::vector<RigidRelation>& relations() const { return relations_; }
  const std::vector<RigidParam>& params() const { return params_; }

  std::vector<std::string> objectSortNames() const;

 private:
  void checkFreshName(const std::string& name) const;
  const Sort& requireSort(const std::string& name, SortKind kind,
                          const std::string& context) const;

  std::vector<Sort> sorts_;
  std::vector<StateFn> state_fns_;
  std::vector<RigidRelation> relations_;
  std::vector<RigidParam> params_;
  std::map<std::string, int> sort_ids_, state_ids_, rel_ids_, param_ids_;
  std::map<std::string, std::pair<int, int>> value_owner_;  // value -> (sort id, idx)
};

using SignaturePtr = std::shared_ptr<const Signature>;

// ---------------------------------------------------------------------------
// Terms

struct VarRef {
  std::string name;
};

/// A fixed element of an object sort's domain (index into the instance
/// ordering). Produced by quantifier expansion; never written by parsers.
struct ElemRef {
  std::string sort;
  int index = 0;
};

using ObjArg = std::variant<VarRef, ElemRef>;

struct Term {
  enum class Kind { Obj, Value, App };
  Kind kind = Kind::Obj;

  ObjArg obj;         // Obj
  std::string value;  // Value: enum value name

  // App: state function (possibly primed) or rigid parameter application
  std::string fn;
  std::vector<ObjArg> args;
  bool primed = false;
};

Term tVar(std::string name);
Term tElem(std::string sort, int index);
Term tVal(std::string value);
Term tApp(std::string fn, std::vector<ObjArg> args, bool primed = false);
Term tApp1(std::string fn, std::string var, bool primed = false);

// ---------------------------------------------------------------------------
// Formulas

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Kind {
    True,
    False,
    Eq,       // lhs = rhs (terms of equal sort)
    Rel,      // rigid relation atom
    Not,
    And,
    Or,
    Implies,  // kids[0] -> kids[1]
    Forall,
    Exists,
  };

  Kind kind = Kind::True;
  Term lhs, rhs;                  // Eq
  std::string rel;                // Rel
  std::vector<ObjArg> args;       // Rel
  std::vector<FormulaPtr> kids;   // Not/And/Or/Implies/quantifier body
  std::string var, var_sort;      // quantifiers

  bool isAtom() const {
    return kind == Kind::True || kind == Kind::False || kind == Kind::Eq ||
           kind == Kind::Rel;
  }
};

FormulaPtr mkTrue();
FormulaPtr mkFalse();
FormulaPtr mkEq(Term lhs, Term rhs);
FormulaPtr mkNeq(Term lhs, Term rhs);  // sugar: Not(Eq)
FormulaPtr mkRel(std::string rel, std::vector<ObjArg> args);
FormulaPtr mkNot(FormulaPtr f);
FormulaPtr mkAnd(std::vector<FormulaPtr> kids);  // empty -> True
FormulaPtr mkOr(std::vector<FormulaPtr> kids);   // empty -> False
FormulaPtr mkImplies(FormulaPtr a, FormulaPtr b);
FormulaPtr mkForall(std::string var, std::string sort, FormulaPtr body);
FormulaPtr mkExists(std::string var, std::string sort, FormulaPtr body);

std::string toString(const Term& t);
std::string toString(const ObjArg& a);
/// Canonical text in the formula syntax understood by parseFormula.
std::string toString(const Formula& f);
std::string toString(const FormulaPtr& f);

bool structurallyEqual(const Formula& a, const Formula& b);

/// All state-function / relation / parameter names occurring in f.
void collectSymbols(const Formula& f, std::vector<std::string>& out);
bool mentionsPrimed(const Formula& f);

/// Free variable names of f, in first-occurrence order.
std::vector<std::string> freeVars(const Formula& f);

/// Substitutes every free occurrence of var by the given argument.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const ObjArg& arg);

// ---------------------------------------------------------------------------
// Sort checking

/// Verifies that every symbol/variable use in f matches sig: declared
/// symbols, matching argument and value sorts, object-sorted quantifiers,
/// no rebinding of a variable along one path, no use of undeclared free
/// variables. free_vars supplies the sorts of permitted free variables.
/// Returns the first offending subterm as a diagnostic, or nullopt.
std::optional<Diagnostic> sortCheck(
    const Formula& f, const Signature& sig,
    const std::map<std::string, std::string>& free_vars = {});

}  // namespace ilock
