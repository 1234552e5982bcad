#pragma once

// Finite structures and Tarskian evaluation. A Structure may interpret only a
// subset of the signature's symbols; evaluating a formula that reads an
// uninterpreted symbol is an Error. Transition formulas are evaluated over a
// single two-state structure carrying current and primed interpretations.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ilock/fol.hpp"

namespace ilock {

class Structure {
 public:
  explicit Structure(SignaturePtr sig);

  const Signature& sig() const { return *sig_; }
  const SignaturePtr& sigPtr() const { return sig_; }

  void setDomain(const std::string& sort, int size);
  int domainSize(const std::string& sort) const;
  int domainSizeById(int sort_id) const { return domains_[sort_id]; }

  // interpretations; tables are mixed-radix indexed over the argument domains
  void setRelation(const std::string& name, std::vector<uint8_t> table);
  void setRelationTuples(const std::string& name,
                         const std::vector<std::vector<int>>& tuples);
  void setParam(const std::string& name, std::vector<uint8_t> table);
  void setState(const std::string& name, std::vector<uint8_t> values);
  void setPrimed(const std::string& name, std::vector<uint8_t> values);

  bool hasRelation(int id) const { return !rel_[id].missing; }
  bool hasParam(int id) const { return !param_[id].missing; }
  bool hasState(int id) const { return !cur_[id].missing; }
  bool hasPrimed(int id) const { return !primed_[id].missing; }
  bool hasAnyPrimed() const;

  bool relAt(int id, const std::vector<int>& args) const;
  int paramAt(int id, const std::vector<int>& args) const;
  int stateAt(int id, int elem, bool primed) const;

  const std::vector<uint8_t>& relTable(int id) const { return rel_[id].data; }
  const std::vector<uint8_t>& paramTable(int id) const { return param_[id].data; }
  const std::vector<uint8_t>& stateTable(int id, bool primed) const {
    return primed ? primed_[id].data : cur_[id].data;
  }

  size_t relTableSize(const std::string& name) const;
  size_t paramTableSize(const std::string& name) const;

  /// Copy with primed state moved into current (used to replay a CTI's
  /// post-state as an ordinary state).
  Structure primedAsCurrent() const;

  /// Copy restricted to rigid interpretations (relations + params).
  Structure rigidOnly() const;

  /// Deterministic byte fingerprint of domains plus all present tables.
  std::string fingerprint() const;

  /// Structure with every object sort's elements relabeled by the given
  /// permutations (perms[sort_id][old] = new). Missing entries = identity.
  Structure permuted(const std::map<int, std::vector<int>>& perms) const;

  /// Human-readable dump (domains, then every present table).
  std::string describe() const;

 private:
  friend class Evaluator;
  struct Table {
    bool missing = true;
    std::vector<uint8_t> data;
  };
  size_t tupleIndex(const std::vector<std::string>& arg_sorts,
                    const std::vector<int>& args) const;
  size_t tableSize(const std::vector<std::string>& arg_sorts) const;

  SignaturePtr sig_;
  std::vector<int> domains_;  // per sort id; enum sorts hold their value count
  std::vector<Table> rel_, param_, cur_, primed_;
};

/// Compiled evaluator: resolves names to signature ids and variables to env
/// slots once, then evaluates on many structures. Free variables get slots
/// in name-sorted order.
class Evaluator {
 public:
  Evaluator(FormulaPtr f, SignaturePtr sig);

  const std::vector<std::pair<std::string, std::string>>& freeVars() const {
    return free_vars_;  // (name, sort), slot order
  }

  bool eval(const Structure& m) const;
  bool eval(const Structure& m, const std::map<std::string, int>& env) const;
  /// env by slot; values beyond freeVars() are scratch for quantifiers.
  bool evalSlots(const Structure& m, std::vector<int>& slots) const;

  size_t slotCount() const { return slot_count_; }

 private:
  struct Node;
  int compileArg(const ObjArg& a, std::vector<std::pair<std::string, std::string>>& bound);
  std::unique_ptr<Node> compile(const Formula& f,
                                std::vector<std::pair<std::string, std::string>>& bound);
  struct TermRef {
    // object arg: slot >= 0 -> env slot; otherwise elem index = -(v+1)
    int encoded = 0;
    int sort_id = -1;  // object sort of the arg (for elem range checks)
  };

  FormulaPtr formula_;
  SignaturePtr sig_;
  std::vector<std::pair<std::string, std::string>> free_vars_;
  std::unique_ptr<Node> root_;
  size_t slot_count_ = 0;
};

/// Convenience single-shot evaluation. pre: f well-sorted for m's signature,
/// env covers the free variables. Throws Error on missing interpretations.
bool eval(const FormulaPtr& f, const Structure& m,
          const std::map<std::string, int>& env = {});

/// Replaces each quantifier by a finite conjunction/disjunction over element
/// indices 0..size-1 of the bound sort. Result is quantifier-free over
/// indexed elements and eval-equivalent on structures with these domains.
FormulaPtr expandQuantifiers(const FormulaPtr& f,
                             const std::map<std::string, int>& domain_sizes);

}  // namespace ilock
