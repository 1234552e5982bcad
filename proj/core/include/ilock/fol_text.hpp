#pragma once

// Textual formula syntax used by property files and system dumps:
//
//   forall v : Sort . f      exists v : Sort . f
//   f -> g    f || g    f && g    !f    (f)    true    false
//   fn[v] = value    fn'[v] = value    fn[v] != other[w]
//   param(v, w) in term position, Relation(v, w) as an atom
//
// Property files add named macros:
//
//   macro Name(v : Sort, ...) := formula ;
//   property name := formula ;

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ilock/diagnostics.hpp"
#include "ilock/fol.hpp"

namespace ilock {

struct FormulaMacro {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // (var, object sort)
  FormulaPtr body;
};

struct FormulaParse {
  FormulaPtr formula;  // null on error
  Diagnostics diags;
  bool ok() const { return formula != nullptr && !hasErrors(diags); }
};

/// Parses a single formula. Macro calls are expanded inline (bound variables
/// of the body freshened against the call site). The result is sort-checked
/// against sig with the given free variables.
FormulaParse parseFormula(std::string_view text, const Signature& sig,
                          const std::map<std::string, std::string>& free_vars = {},
                          const std::vector<FormulaMacro>& macros = {},
                          const std::string& filename = "<formula>");

struct PropertyFileParse {
  std::string name;
  FormulaPtr formula;  // macro-expanded, closed state formula
  std::vector<FormulaMacro> macros;
  Diagnostics diags;
  bool ok() const { return formula != nullptr && !hasErrors(diags); }
};

PropertyFileParse parsePropertyFile(std::string_view text, const Signature& sig,
                                    const std::string& filename = "<property>");

}  // namespace ilock
