#pragma once

#include "confres/justification_graph.hpp"
#include "confres/world_model.hpp"

#include <string>
#include <vector>

namespace confres
{

/// One maximal consistent set of evidence.
struct WorldGroup
{
  std::vector<EntityId> members; // sorted
  /// Step-0 formula: member bodies and facts.
  Formula constraint;

  [[nodiscard]] std::string name() const;
  /// Compound entity over the member atoms.
  [[nodiscard]] JustificationGraph graph() const;

  friend bool operator==(const WorldGroup&, const WorldGroup&) = default;
};

struct PossibleWorldSet
{
  std::vector<WorldGroup> groups; // sorted by members
  std::vector<EntityId> degenerate;
};

/// All maximal subsets of `evidences` whose bodies, together with the facts
/// and the unrolled world, are satisfiable. Evidence inconsistent on its own is
/// reported as degenerate and left out. Throws Error if the facts contradict
/// the world.
PossibleWorldSet max_consistent_sets(const std::vector<Evidence>& evidences, const std::vector<Formula>& facts,
                                     const WorldModel& w, unsigned horizon);

} // namespace confres
