#pragma once

#include "confres/cnf.hpp"
#include "confres/formula.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace confres::sat
{

/// Incremental Tseitin encoder over named variables.
///
/// Accepts ⊥, ⊤, variables, →, ¬, ∧, ∨, ↔. Each subformula gets one literal
/// defined by full equivalence clauses, so the literal of a formula may also be
/// used negatively. Belief and temporal nodes are rejected.
class CnfBuilder
{
public:
  CnfBuilder() = default;
  explicit CnfBuilder(const std::map<std::string, std::uint32_t>& var_map);

  /// Index of a named variable, allocating a fresh one if needed.
  std::uint32_t var(const std::string& name);
  [[nodiscard]] bool has_var(const std::string& name) const { return _names.count( name ) > 0; }
  std::uint32_t fresh();

  Literal literal(const Formula& f);
  /// Adds clauses forcing `f` to hold. Top-level conjunctions are split.
  void assert_formula(const Formula& f);
  /// Adds clauses forcing `sel -> f`. Conjunctions, disjunctions and
  /// implications over literals become plain clauses with no auxiliary
  /// definitions, so the clauses stay inert while `sel` is unassigned.
  void assert_guarded(Literal sel, const Formula& f);
  void add_clause(Clause c);
  void add_assumption(AssumptionId id, Literal lit);

  [[nodiscard]] const CnfProblem& problem() const { return _problem; }
  [[nodiscard]] const std::map<std::string, std::uint32_t>& names() const { return _names; }
  /// Index to name for the named variables only.
  [[nodiscard]] std::map<std::uint32_t, std::string> index_names() const;

private:
  Literal constant_false();
  // false if the disjunction is trivially true
  bool collect_or(const Formula& f, Clause& out);
  bool collect_neg_and(const Formula& f, Clause& out);

  CnfProblem _problem;
  std::map<std::string, std::uint32_t> _names;
  std::unordered_map<const void*, Literal> _cache;
  std::vector<Formula> _keep_alive;
  std::uint32_t _false_var = 0;
};

/// Equisatisfiable CNF for a propositional formula. Variables already in
/// `var_map` keep their index; the rest are allocated above the highest one.
CnfProblem tseitin_transform(const Formula& f, std::map<std::string, std::uint32_t>& var_map);

} // namespace confres::sat
