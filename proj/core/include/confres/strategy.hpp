#pragma once

#include "confres/world_model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace confres
{

enum class StrategyMode
{
  Sequence, // one action per step, history-oblivious
  Reactive, // action chosen from the observed history
};

std::string to_string(StrategyMode m);

/// Valuation of the variables a role observes, in WorldModel::observed_by order.
using Observation = std::vector<bool>;
/// Observations s_0..s_t; decides the action at step t.
using History = std::vector<Observation>;

struct Strategy
{
  Role owner = Role::A;
  StrategyMode mode = StrategyMode::Sequence;
  std::vector<std::string> sequence;
  std::map<History, std::string> decisions;

  /// Throws Error if the history is not covered.
  [[nodiscard]] const std::string& action_at(const History& h) const;
  /// Short deterministic rendering, e.g. "stay,change".
  [[nodiscard]] std::string label() const;

  friend auto operator<=>(const Strategy&, const Strategy&) = default;
};

struct JointStrategy
{
  Strategy a;
  Strategy b;

  [[nodiscard]] std::string label() const { return "(" + a.label() + " | " + b.label() + ")"; }
};

/// Thrown when a strategy space exceeds the configured cap.
class BudgetError : public Error
{
public:
  using Error::Error;
};

constexpr std::uint64_t default_strategy_budget = 1'000'000;

/// Observation histories of length 1..H a role can see, under any choice of
/// actions by every role. Sorted by length, then lexicographically.
std::vector<History> reachable_histories(Role r, const WorldModel& w, unsigned horizon);

/// All strategies of `r` in lexicographic order of their decisions.
std::vector<Strategy> enumerate_strategies(Role r, const WorldModel& w, unsigned horizon, StrategyMode mode,
                                           std::uint64_t budget = default_strategy_budget);

/// Runs consistent with the world, `constraint` (a step-0 formula such as a
/// group's induced constraint) and both strategies, Env ranging freely.
std::vector<Run> runs_of(const JointStrategy& joint, const Formula& constraint, const WorldModel& w, unsigned horizon);

} // namespace confres
