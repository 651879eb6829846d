#pragma once

#include "confres/formula.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace confres
{

enum class Role
{
  A,
  B,
  Env,
};

std::string to_string(Role r);
constexpr std::array<Role, 3> all_roles{ Role::A, Role::B, Role::Env };

/// `on <role>.<action> [if guard] => v := expr; ...`
///
/// Guards and effect expressions are propositional over the state variables
/// and the action names; an action name reads true when that action is chosen
/// at the current step. Effects read the values before the transition.
struct ActionRule
{
  Role role = Role::A;
  std::string action;
  Formula guard = Formula::top();
  std::vector<std::pair<std::string, Formula>> effects;

  friend bool operator==(const ActionRule&, const ActionRule&) = default;
};

/// Symbolic transition system over boolean state variables.
///
/// Every step each role picks exactly one action. A rule fires when its action
/// is chosen and its guard holds. Variables that no firing rule assigns keep
/// their value; two firing rules assigning different values to the same
/// variable leave no successor.
struct WorldModel
{
  std::vector<std::string> variables;
  Formula init = Formula::top();
  Formula current = Formula::top();
  std::map<Role, std::vector<std::string>> alphabets;
  /// Variables a role observes in reactive mode; absent means all.
  std::map<Role, std::vector<std::string>> observed;
  std::vector<ActionRule> rules;

  /// Throws Error on duplicate names, empty alphabets, alphabets shared
  /// between roles, unknown names in rules or non-propositional conditions.
  void validate() const;

  [[nodiscard]] const std::vector<std::string>& alphabet(Role r) const;
  [[nodiscard]] std::vector<std::string> observed_by(Role r) const;
  [[nodiscard]] std::optional<Role> owner_of(const std::string& action) const;
  [[nodiscard]] bool is_variable(const std::string& name) const;
  [[nodiscard]] std::size_t index_of(const std::string& var) const;

  friend bool operator==(const WorldModel&, const WorldModel&) = default;
};

struct Evidence
{
  EntityId atom;
  Formula body;
  std::string provenance;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// Valuation of WorldModel::variables, by position.
using State = std::vector<bool>;

/// One action per role, indexed by Role.
using JointAction = std::array<std::string, 3>;

struct Run
{
  std::vector<State> states;
  std::vector<JointAction> actions;

  friend auto operator<=>(const Run&, const Run&) = default;
};

/// Every valuation satisfying init and current.
std::vector<State> initial_states(const WorldModel& w);

/// Explicit transition under `choice`; nullopt if two firing rules disagree.
std::optional<State> successor(const WorldModel& w, const State& s, const JointAction& choice);

/// Evaluates a propositional formula in `s` with the given actions chosen.
bool holds(const WorldModel& w, const Formula& f, const State& s, const JointAction* choice = nullptr);

std::string render_state(const WorldModel& w, const State& s);

} // namespace confres
