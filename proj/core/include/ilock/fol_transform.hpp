#pragma once

#include <map>
#include <string>
#include <vector>

#include "ilock/fol.hpp"

namespace ilock {

/// Negation normal form: implications rewritten, negations pushed to atoms.
FormulaPtr nnf(const FormulaPtr& f);

struct Quantifier {
  bool universal = true;
  std::string var;
  std::string sort;
};

struct Prenexed {
  std::vector<Quantifier> prefix;  // outside-in
  FormulaPtr matrix;               // quantifier-free

  FormulaPtr toFormula() const;
  /// number of existential prefix variables per sort
  std::map<std::string, int> existentialCounts() const;
  bool isExistsForall() const;  // prefix is a (possibly empty) ∃-block then ∀-block
};

/// NNF + quantifier extrusion. Bound variables are freshened where pulling
/// them out would collide. Quantifiers are interleaved across siblings so
/// that existentials come as early as the formula's structure allows (a
/// conjunction of ∃*∀* pieces prenexes to ∃*∀*). As usual, equivalence with
/// the input is relative to nonempty domains.
Prenexed prenex(const FormulaPtr& f);

/// Marks every state-function application primed. Rigid symbols untouched.
/// Throws Error if f already mentions a primed application.
FormulaPtr prime(const FormulaPtr& f, const Signature& sig);

/// Removes all prime markers.
FormulaPtr unprime(const FormulaPtr& f);

/// Constant folding and single-child collapsing; eval-equivalent.
FormulaPtr simplify(const FormulaPtr& f);

}  // namespace ilock
