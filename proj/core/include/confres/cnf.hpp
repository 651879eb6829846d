#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace confres::sat
{

/// Variables are numbered from 1 as in DIMACS.
struct Literal
{
  std::uint32_t var = 1;
  bool positive = true;

  [[nodiscard]] Literal operator~() const { return Literal{ var, !positive }; }
  [[nodiscard]] int to_dimacs() const { return positive ? static_cast<int>( var ) : -static_cast<int>( var ); }
  static Literal from_dimacs(int lit);

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;
using AssumptionId = std::uint32_t;

struct CnfProblem
{
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;
  std::vector<std::pair<AssumptionId, Literal>> assumptions;

  /// Throws confres::Error if a literal exceeds num_vars, a clause is empty
  /// where not allowed, or assumption ids repeat.
  void validate() const;

  friend bool operator==(const CnfProblem&, const CnfProblem&) = default;
};

struct SolveResult
{
  bool sat = false;
  /// Index v holds the value of variable v; index 0 is unused.
  std::vector<bool> model;
  std::set<AssumptionId> core;

  [[nodiscard]] bool value(std::uint32_t var) const { return model.at( var ); }
  [[nodiscard]] bool value(Literal lit) const { return model.at( lit.var ) == lit.positive; }

  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

/// True iff `model` satisfies every clause and every assumption of `p`.
bool satisfies(const CnfProblem& p, const std::vector<bool>& model);

/// Copy of `p` keeping only the assumptions whose ids are in `keep`.
CnfProblem restrict_assumptions(const CnfProblem& p, const std::set<AssumptionId>& keep);

} // namespace confres::sat
