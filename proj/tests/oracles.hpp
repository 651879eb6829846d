#pragma once

// Reference implementations used only by tests. They share data types with the
// library but none of its evaluation code.

#include "confres/cnf.hpp"
#include "confres/engine.hpp"
#include "confres/formula.hpp"
#include "confres/world_model.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle
{

using confres::Formula;
using Valuation = std::map<std::string, bool>;
using Trace = std::vector<Valuation>;

/// Truth-table satisfiability, assumptions included.
bool brute_sat(const confres::sat::CnfProblem& p);

/// Classical evaluation; belief and temporal nodes throw.
bool eval(const Formula& f, const Valuation& v);

/// Finite-trace evaluation at step t of a trace with steps 0..trace.size()-1.
bool eval_trace(const Formula& f, const Trace& trace, int t);

/// One explicit run: states as valuations plus the chosen action per role.
struct SimRun
{
  Trace states;
  std::vector<std::array<std::string, 3>> actions;
};

/// Every run of length `horizon` allowed by the world, by brute force over
/// initial assignments and action choices.
std::vector<SimRun> all_runs(const confres::WorldModel& w, unsigned horizon);

/// Valuation of a run at step t, action names included (false at the last step).
Valuation step_view(const confres::WorldModel& w, const SimRun& r, std::size_t t);
Trace run_view(const confres::WorldModel& w, const SimRun& r);

/// Maximal consistent subsets of evidence atoms by enumerating all subsets;
/// atoms unsatisfiable on their own are returned in `degenerate`.
struct Groups
{
  std::vector<std::vector<std::string>> groups; // each sorted, list sorted
  std::vector<std::string> degenerate;
};
Groups brute_groups(const std::vector<confres::Evidence>& ev, const std::vector<Formula>& facts,
                    const confres::WorldModel& w, unsigned horizon);

/// Conflict verdict by direct quantification over sequence strategy pairs:
/// true iff A has no strategy that wins its maximal goals against every
/// rational choice of B in every possible world.
bool brute_conflict(const confres::Problem& p);

/// Random CNF with up to `max_vars` variables and `max_clauses` clauses of
/// length 1..3; `assumptions` random unit assumptions with ids 0.. .
confres::sat::CnfProblem random_cnf(std::mt19937_64& rng, unsigned max_vars, unsigned max_clauses, unsigned assumptions);

/// Random micro scenario: at most 3 variables, 2 actions per agent, horizon
/// 1..2, up to 3 evidence atoms and 1..2 goals per agent.
confres::Problem random_micro(std::mt19937_64& rng);

/// Random formula over `vars` with the given operator depth.
Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth, bool temporal);

} // namespace oracle
