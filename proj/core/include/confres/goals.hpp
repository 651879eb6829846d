#pragma once

#include "confres/formula.hpp"
#include "confres/world_model.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace confres
{

using GoalId = std::string;
using GoalSet = std::set<GoalId>;

struct Goal
{
  GoalId id;
  Role owner = Role::A;
  Formula formula;
  std::uint64_t weight = 0;

  friend bool operator==(const Goal&, const Goal&) = default;
};

/// Goals plus w : 2^Φ → ℕ. Subsets listed in `table` take that weight; all
/// others weigh the sum of their per-goal weights. w(∅) = 0.
struct GoalBase
{
  std::vector<Goal> goals;
  std::map<GoalSet, std::uint64_t> table;

  [[nodiscard]] std::uint64_t weight(const GoalSet& s) const;
  [[nodiscard]] const Goal* find(const GoalId& id) const;
  [[nodiscard]] GoalSet ids() const;

  friend bool operator==(const GoalBase&, const GoalBase&) = default;
};

/// Subsets of some achieved set with maximal weight, ties sorted. Each entry
/// of `achieved` lists the goals one candidate achieves on all its runs; ids
/// outside the base are ignored. Returns {∅} when nothing beats the empty goal.
std::vector<GoalSet> maximal_subgoals(const GoalBase& goals, const std::vector<GoalSet>& achieved);

std::string to_string(const GoalSet& s);

} // namespace confres
