#pragma once

#include "confres/formula.hpp"

#include <string>
#include <utility>
#include <vector>

namespace confres
{

enum class EntityKind
{
  Atom,
  Compound
};

struct BeliefEntity
{
  EntityId id;
  EntityKind kind = EntityKind::Atom;

  friend bool operator==(const BeliefEntity&, const BeliefEntity&) = default;
};

struct Edge
{
  EntityId parent;
  EntityId child;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// DAG of belief entities. An edge parent -> child reads "parent has the
/// component child"; atoms are exactly the leaves.
class JustificationGraph
{
public:
  JustificationGraph() = default;
  JustificationGraph(std::vector<BeliefEntity> entities, std::vector<Edge> edges);

  /// Compound entity `root` whose components are `atoms` (each an Atom).
  static JustificationGraph star(const EntityId& root, const std::vector<EntityId>& atoms);

  [[nodiscard]] const std::vector<BeliefEntity>& entities() const { return _entities; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return _edges; }

  [[nodiscard]] std::vector<EntityId> components(const EntityId& e) const;
  [[nodiscard]] std::vector<EntityId> atoms() const;
  [[nodiscard]] const BeliefEntity* find(const EntityId& e) const;

private:
  std::vector<BeliefEntity> _entities;
  std::vector<Edge> _edges;
};

enum class ViolationKind
{
  DuplicateEntity,
  UnknownEntity,
  Cycle,
  CompoundLeaf,
  AtomWithComponents,
};

struct Violation
{
  ViolationKind kind;
  /// Entities involved; for a cycle, its members in traversal order.
  std::vector<EntityId> entities;
};

struct ValidationReport
{
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks acyclicity and the leaf-iff-atom rule. Violations are reported as
/// data; the function never throws.
ValidationReport validate_graph(const JustificationGraph& g);

std::string to_string(ViolationKind k);

} // namespace confres
