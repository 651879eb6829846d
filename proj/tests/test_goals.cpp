#include "confres/goals.hpp"
#include "confres/formula_parser.hpp"

#include <doctest.h>

using namespace confres;

namespace
{

GoalBase base()
{
  GoalBase b;
  b.goals = { { "A.col", Role::A, parse_formula( "G !crash" ), 100 },
              { "A.lc", Role::A, parse_formula( "F left" ), 5 },
              { "A.fast", Role::A, parse_formula( "G !passed" ), 5 } };
  return b;
}

} // namespace

TEST_SUITE( "goals" )
{
  TEST_CASE( "additive weights with table override" )
  {
    auto b = base();
    CHECK( b.weight( {} ) == 0 );
    CHECK( b.weight( { "A.col", "A.lc" } ) == 105 );
    b.table[{ "A.col", "A.lc" }] = 7;
    CHECK( b.weight( { "A.col", "A.lc" } ) == 7 );
    CHECK_THROWS_AS( b.weight( { "B.x" } ), Error );
  }

  TEST_CASE( "maximal subgoals keep ties" )
  {
    const auto b = base();
    const auto m = maximal_subgoals( b, { { "A.col", "A.lc" }, { "A.col", "A.fast" }, { "A.lc", "A.fast" } } );
    CHECK( m == std::vector<GoalSet>{ { "A.col", "A.fast" }, { "A.col", "A.lc" } } );
    CHECK( maximal_subgoals( b, {} ) == std::vector<GoalSet>{ GoalSet{} } );
  }

  TEST_CASE( "rendering" ) { CHECK( to_string( GoalSet{ "b", "a" } ) == "{a, b}" ); }
}
