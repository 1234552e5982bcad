#pragma once

// The interlocking specification language. One class per logical entity:
// enum-typed variables with initial values, connection lists to other
// classes (with per-link parameters), and prioritized guarded methods over a
// distinguished `state` variable.
//
//   class route {
//     var state : { inactive, active } init inactive ;
//     list uses : track with reqDir : { d1, d2 } ;
//     method activate priority 1 {
//       from inactive ;
//       guard forall t in uses : ( t.state = free && t.direction = t.reqDir ) ;
//       effect
//         state := active ;
//         forall t in uses : t.state := locked ;
//     }
//   }
//
// Guards read own variables, linked objects' variables and link parameters;
// effects assign constants to own variables or, via `forall x in list`, to
// linked objects' variables. Guards have no existential quantifier and
// effects never branch.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ilock/diagnostics.hpp"

namespace ilock {

struct EnumType {
  std::vector<std::string> values;  // ordered, nonempty

  bool operator==(const EnumType&) const = default;
  bool isBool() const { return values == std::vector<std::string>{"false", "true"}; }
  bool contains(const std::string& v) const {
    for (const auto& x : values)
      if (x == v) return true;
    return false;
  }
  /// Canonical sort name: "bool" prints as such, otherwise "{v1,v2}".
  std::string sortName() const;
};

struct VarDecl {
  std::string name;
  EnumType type;
  std::string init;
  SourceLoc loc;
};

struct ParamDecl {
  std::string name;
  EnumType type;
  SourceLoc loc;
};

struct ListDecl {
  std::string name;
  std::string target_class;
  std::vector<ParamDecl> params;
  SourceLoc loc;
};

// ---------------------------------------------------------------------------
// Guard expressions

struct GuardExpr;
using GuardPtr = std::shared_ptr<const GuardExpr>;

/// One side of a comparison, resolved lazily against the class context:
/// a bare identifier is an own variable or an enum value; `x.n` reads the
/// member variable or the link parameter n through iteration variable x.
struct GuardRead {
  bool is_member = false;
  std::string iter;  // member reads only
  std::string name;
  SourceLoc loc;
};

struct GuardExpr {
  enum class Kind { Const, Cmp, Not, And, Or, Implies, ForallList };
  Kind kind = Kind::Const;

  bool const_value = true;            // Const
  GuardRead lhs, rhs;                 // Cmp
  bool negated = false;               // Cmp: != instead of =
  std::vector<GuardPtr> kids;         // Not/And/Or/Implies
  std::string iter_var, list_name;    // ForallList (body in kids[0])
  SourceLoc loc;
};

// ---------------------------------------------------------------------------
// Effects and methods

struct EffectStmt {
  enum class Kind { OwnAssign, ListAssign };
  Kind kind = Kind::OwnAssign;
  std::string var;
  std::string value;
  std::string iter_var, list_name;  // ListAssign
  SourceLoc loc;
};

struct MethodDef {
  std::string name;
  int priority = 0;  // lower number = higher priority
  std::string source;
  GuardPtr guard;
  std::vector<EffectStmt> effects;
  SourceLoc loc;
};

struct ClassDef {
  std::string name;
  std::vector<VarDecl> vars;
  std::vector<ListDecl> lists;
  std::vector<MethodDef> methods;
  SourceLoc loc;

  const VarDecl* findVar(const std::string& n) const;
  const ListDecl* findList(const std::string& n) const;
  const MethodDef* findMethod(const std::string& n) const;
};

struct SpecAst {
  std::vector<ClassDef> classes;

  const ClassDef* findClass(const std::string& n) const;
};

// ---------------------------------------------------------------------------
// Operations

struct SpecParse {
  std::optional<SpecAst> ast;
  Diagnostics diags;
  bool ok() const { return ast.has_value() && !hasErrors(diags); }
};

/// Syntax only; semantic checks live in checkWellFormed.
SpecParse parseSpec(std::string_view text, const std::string& filename = "<spec>");

/// All structural invariants: unique names, resolvable class references,
/// type-correct initial values and comparisons/assignments, globally
/// consistent enum value scoping, method source values, per-(source,
/// priority) determinism, write footprints. Warnings use W- codes.
Diagnostics checkWellFormed(const SpecAst& ast);

/// parseSpec + checkWellFormed.
SpecParse parseAndCheck(std::string_view text, const std::string& filename = "<spec>");

/// Canonical pretty-print; parseSpec(printSpec(ast)) is structurally
/// identical to ast.
std::string printSpec(const SpecAst& ast);

// resolution of guard reads (shared by the checker, the interpreter in exec
// and the lowering in symbolic)
struct ResolvedRead {
  enum class Kind { OwnVar, MemberVar, LinkParam, Value };
  Kind kind = Kind::Value;
  const EnumType* type = nullptr;
  std::string value;                  // Value
  const VarDecl* var = nullptr;       // OwnVar/MemberVar
  const ListDecl* list = nullptr;     // MemberVar/LinkParam
  const ParamDecl* param = nullptr;   // LinkParam
};

/// Resolves a read in the context of cls, with iteration variables mapping
/// to the lists they range over. Returns nullopt and a diagnostic on error.
std::optional<ResolvedRead> resolveRead(
    const GuardRead& read, const ClassDef& cls, const SpecAst& ast,
    const std::vector<std::pair<std::string, const ListDecl*>>& iters,
    Diagnostics& diags);

/// Static write footprint of a method: own variables and (list, member
/// variable) pairs it assigns.
struct Footprint {
  std::vector<std::string> own_vars;
  std::vector<std::pair<std::string, std::string>> list_vars;  // (list, var)

  bool writesOwn(const std::string& v) const;
  bool writesListVar(const std::string& list, const std::string& v) const;
};

Footprint methodFootprint(const MethodDef& m);

}  // namespace ilock
