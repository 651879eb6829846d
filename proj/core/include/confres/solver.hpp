#pragma once

#include "confres/cnf.hpp"

#include <cstdint>
#include <vector>

namespace confres::sat
{

struct SolverStats
{
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t learnt = 0;
};

/// Conflict-driven clause learning over one CnfProblem.
///
/// Two watched literals, first-UIP learning, no restarts and no clause
/// deletion. Assumptions are decided in order at the first decision levels;
/// when one is falsified the set of assumptions responsible is returned as the
/// core. Branching picks the lowest-index unassigned variable, positive first,
/// so results are a pure function of the input.
class Solver
{
public:
  explicit Solver(const CnfProblem& problem);

  /// Solves under the assumptions given at construction.
  SolveResult solve();
  /// Solves under `assumptions` instead; learnt clauses carry over between calls.
  SolveResult solve(const std::vector<std::pair<AssumptionId, Literal>>& assumptions);

  /// Appends clauses, growing the variable count to `num_vars` if needed.
  void add_clauses(std::uint32_t num_vars, const std::vector<Clause>& clauses);

  [[nodiscard]] const SolverStats& stats() const { return _stats; }

private:
  using Lit = std::uint32_t;
  static constexpr std::int32_t no_reason = -1;

  static Lit encode(Literal l) { return 2 * ( l.var - 1 ) + ( l.positive ? 0 : 1 ); }
  static Lit neg(Lit l) { return l ^ 1u; }
  static std::uint32_t var_of(Lit l) { return l >> 1; }

  [[nodiscard]] std::int8_t value(Lit l) const;
  [[nodiscard]] std::uint32_t level() const { return static_cast<std::uint32_t>( _trail_lim.size() ); }

  void grow(std::uint32_t num_vars);
  bool add_clause(std::vector<Lit> lits);
  void enqueue(Lit l, std::int32_t reason);
  std::int32_t propagate();
  void analyze(std::int32_t conflict, std::vector<Lit>& learnt, std::uint32_t& backjump);
  void analyze_final(Lit falsified, std::vector<Lit>& core_lits);
  void backtrack(std::uint32_t to_level);
  bool pick_branch(Lit& out);

  std::uint32_t _num_vars;
  bool _trivially_unsat = false;
  std::vector<std::vector<Lit>> _clauses;
  std::vector<std::vector<std::uint32_t>> _watches;
  std::vector<std::int8_t> _assign; // per variable: -1 unassigned, 0 false, 1 true
  std::vector<std::uint32_t> _var_level;
  std::vector<std::int32_t> _reason;
  std::vector<Lit> _trail;
  std::vector<std::uint32_t> _trail_lim;
  std::size_t _qhead = 0;
  std::uint32_t _next_var = 0;
  std::vector<char> _seen;

  std::vector<Lit> _assumption_lits;
  std::vector<std::pair<AssumptionId, Literal>> _assumptions;

  SolverStats _stats;
};

/// Solves `p` with a fresh solver instance.
SolveResult solve(const CnfProblem& p);

} // namespace confres::sat
