#include "confres/justification_graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace confres
{

JustificationGraph::JustificationGraph(std::vector<BeliefEntity> entities, std::vector<Edge> edges)
    : _entities( std::move( entities ) ), _edges( std::move( edges ) )
{
}

JustificationGraph JustificationGraph::star(const EntityId& root, const std::vector<EntityId>& atoms)
{
  std::vector<BeliefEntity> entities{ { root, EntityKind::Compound } };
  std::vector<Edge> edges;
  for ( const auto& a : atoms )
  {
    entities.push_back( { a, EntityKind::Atom } );
    edges.push_back( { root, a } );
  }
  return JustificationGraph( std::move( entities ), std::move( edges ) );
}

std::vector<EntityId> JustificationGraph::components(const EntityId& e) const
{
  std::vector<EntityId> out;
  for ( const auto& edge : _edges )
  {
    if ( edge.parent == e )
      out.push_back( edge.child );
  }
  std::sort( out.begin(), out.end() );
  return out;
}

std::vector<EntityId> JustificationGraph::atoms() const
{
  std::vector<EntityId> out;
  for ( const auto& e : _entities )
  {
    if ( e.kind == EntityKind::Atom )
      out.push_back( e.id );
  }
  std::sort( out.begin(), out.end() );
  return out;
}

const BeliefEntity* JustificationGraph::find(const EntityId& e) const
{
  for ( const auto& ent : _entities )
  {
    if ( ent.id == e )
      return &ent;
  }
  return nullptr;
}

std::string to_string(ViolationKind k)
{
  switch ( k )
  {
  case ViolationKind::DuplicateEntity: return "duplicate-entity";
  case ViolationKind::UnknownEntity: return "unknown-entity";
  case ViolationKind::Cycle: return "cycle";
  case ViolationKind::CompoundLeaf: return "compound-leaf";
  case ViolationKind::AtomWithComponents: return "atom-with-components";
  }
  return "?";
}

ValidationReport validate_graph(const JustificationGraph& g)
{
  ValidationReport report;
  std::map<EntityId, EntityKind> kinds;
  for ( const auto& e : g.entities() )
  {
    if ( !kinds.emplace( e.id, e.kind ).second )
    {
      report.violations.push_back( { ViolationKind::DuplicateEntity, { e.id } } );
    }
  }

  std::map<EntityId, std::vector<EntityId>> succ;
  for ( const auto& edge : g.edges() )
  {
    for ( const auto* id : { &edge.parent, &edge.child } )
    {
      if ( !kinds.count( *id ) )
      {
        report.violations.push_back( { ViolationKind::UnknownEntity, { *id } } );
      }
    }
    succ[edge.parent].push_back( edge.child );
  }
  for ( auto& [_, children] : succ )
  {
    std::sort( children.begin(), children.end() );
    children.erase( std::unique( children.begin(), children.end() ), children.end() );
  }

  for ( const auto& [id, kind] : kinds )
  {
    const bool has_children = succ.count( id ) > 0;
    if ( kind == EntityKind::Compound && !has_children )
      report.violations.push_back( { ViolationKind::CompoundLeaf, { id } } );
    if ( kind == EntityKind::Atom && has_children )
      report.violations.push_back( { ViolationKind::AtomWithComponents, { id } } );
  }

  // Iterative DFS; one violation per back edge, listing the cycle members.
  enum class Mark { White, Grey, Black };
  std::map<EntityId, Mark> mark;
  std::set<std::vector<EntityId>> seen_cycles;
  for ( const auto& [start, _] : succ )
  {
    if ( mark[start] != Mark::White )
      continue;
    std::vector<std::pair<EntityId, std::size_t>> stack{ { start, 0 } };
    mark[start] = Mark::Grey;
    while ( !stack.empty() )
    {
      auto& [node, next] = stack.back();
      const auto it = succ.find( node );
      if ( it == succ.end() || next >= it->second.size() )
      {
        mark[node] = Mark::Black;
        stack.pop_back();
        continue;
      }
      const EntityId child = it->second[next++];
      if ( mark[child] == Mark::Grey )
      {
        std::vector<EntityId> cycle;
        auto pos = std::find_if( stack.begin(), stack.end(), [&]( const auto& p ) { return p.first == child; } );
        for ( ; pos != stack.end(); ++pos )
          cycle.push_back( pos->first );
        auto key = cycle;
        std::sort( key.begin(), key.end() );
        if ( seen_cycles.insert( key ).second )
          report.violations.push_back( { ViolationKind::Cycle, cycle } );
      }
      else if ( mark[child] == Mark::White )
      {
        mark[child] = Mark::Grey;
        stack.emplace_back( child, 0 );
      }
    }
  }
  return report;
}

} // namespace confres
