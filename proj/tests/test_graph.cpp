#include "confres/justification_graph.hpp"

#include <doctest.h>

using namespace confres;

TEST_SUITE( "graph" )
{
  TEST_CASE( "star graph is valid" )
  {
    const auto g = JustificationGraph::star( "world", { "cam", "radar" } );
    CHECK( validate_graph( g ).ok() );
    CHECK( g.atoms() == std::vector<EntityId>{ "cam", "radar" } );
    CHECK( g.components( "world" ) == std::vector<EntityId>{ "cam", "radar" } );
    REQUIRE( g.find( "cam" ) );
    CHECK( g.find( "cam" )->kind == EntityKind::Atom );
  }

  TEST_CASE( "cycle is reported" )
  {
    JustificationGraph g( { { "x", EntityKind::Compound }, { "y", EntityKind::Compound } }, { { "x", "y" }, { "y", "x" } } );
    const auto r = validate_graph( g );
    REQUIRE( r.violations.size() == 1 );
    CHECK( r.violations[0].kind == ViolationKind::Cycle );
    CHECK( r.violations[0].entities.size() == 2 );
  }

  TEST_CASE( "leaf must be an atom and atoms have no components" )
  {
    JustificationGraph g( { { "x", EntityKind::Compound }, { "a", EntityKind::Atom }, { "b", EntityKind::Atom } },
                          { { "a", "b" } } );
    const auto r = validate_graph( g );
    std::set<ViolationKind> kinds;
    for ( const auto& v : r.violations )
      kinds.insert( v.kind );
    CHECK( kinds == std::set<ViolationKind>{ ViolationKind::CompoundLeaf, ViolationKind::AtomWithComponents } );
  }

  TEST_CASE( "unknown and duplicate entities" )
  {
    JustificationGraph g( { { "x", EntityKind::Compound }, { "x", EntityKind::Compound } }, { { "x", "ghost" } } );
    const auto r = validate_graph( g );
    std::set<ViolationKind> kinds;
    for ( const auto& v : r.violations )
      kinds.insert( v.kind );
    CHECK( kinds.count( ViolationKind::DuplicateEntity ) );
    CHECK( kinds.count( ViolationKind::UnknownEntity ) );
  }
}
