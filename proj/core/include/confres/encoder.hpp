#pragma once

#include "confres/formula.hpp"
#include "confres/strategy.hpp"
#include "confres/world_model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace confres
{

/// `<name>@<step>`
std::string timed_name(const std::string& var, int step);
/// `act:<role>:<action>@<step>`
std::string action_var(Role r, const std::string& action, int step);

/// Bounded finite-trace encoding of `g` at step `at` over [0, horizon].
///
/// X beyond the horizon and P before step 0 are false. Variables become timed
/// variables; when `w` is given, action names become action variables.
/// Constant subformulas are folded. Throws Error on belief operators.
Formula encode_goal(const Formula& g, unsigned horizon, int at, const WorldModel* w = nullptr);

/// Initial condition, exactly one action per role per step, and the effect
/// and frame constraints of every transition.
Formula unroll_world(const WorldModel& w, unsigned horizon);

/// ψ_δ: for sequence strategies the chosen action variables; for reactive
/// strategies one implication per covered history.
Formula encode_strategy(const Strategy& s, const WorldModel& w, unsigned horizon);

/// Evidence bodies with their single outer belief layer removed.
struct FlatProblem
{
  std::map<EntityId, Formula> bodies;
  std::vector<Formula> facts;

  friend bool operator==(const FlatProblem&, const FlatProblem&) = default;
};

using SigmaEntry = std::pair<std::optional<EntityId>, Formula>;

/// Accepts (atom, body), (none, {e}: body) and (none, fact). Bodies of the same
/// atom are conjoined. Throws Error on nested beliefs, groups with more than one
/// member, or beliefs below the top level.
FlatProblem flatten(const std::vector<SigmaEntry>& sigma);

/// Conjunction of the flat problem's bodies and facts.
Formula flat_conjunction(const FlatProblem& p);

struct WinCheck
{
  bool winning = false;
  bool vacuous = false; // no run at all
  std::optional<Run> counterexample;
};

/// winning iff world ∧ ψ ∧ ¬goals is unsatisfiable; all three are timed
/// formulas over the same variable space.
WinCheck check_winning(const Formula& psi, const Formula& world, const Formula& goals, const WorldModel& w,
                       unsigned horizon);

/// Reads states and actions from a model given by `value(timed name)`.
Run decode_run(const WorldModel& w, unsigned horizon, const std::function<bool(const std::string&)>& value);

} // namespace confres
