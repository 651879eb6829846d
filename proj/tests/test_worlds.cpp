#include "confres/formula_parser.hpp"
#include "confres/possible_worlds.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace confres;

namespace
{

WorldModel lane_world()
{
  WorldModel w;
  w.variables = { "fast", "left" };
  w.alphabets[Role::A] = { "stay", "change" };
  w.alphabets[Role::B] = { "go" };
  w.alphabets[Role::Env] = { "idle" };
  w.rules.push_back( { Role::A, "change", Formula::top(), { { "left", Formula::top() } } } );
  return w;
}

std::vector<std::vector<std::string>> members(const PossibleWorldSet& s)
{
  std::vector<std::vector<std::string>> out;
  for ( const auto& g : s.groups )
    out.push_back( g.members );
  std::sort( out.begin(), out.end() );
  return out;
}

} // namespace

TEST_SUITE( "worlds" )
{
  TEST_CASE( "contradicting sensors split into two groups" )
  {
    const auto w = lane_world();
    const std::vector<Evidence> ev{ { "radar", parse_formula( "fast" ), "" },
                                    { "lidar", parse_formula( "!fast" ), "" },
                                    { "cam", parse_formula( "!left" ), "" } };
    const auto s = max_consistent_sets( ev, {}, w, 1 );
    CHECK( members( s ) == std::vector<std::vector<std::string>>{ { "cam", "lidar" }, { "cam", "radar" } } );
    CHECK( s.groups[0].name() == "{cam,lidar}" );
    CHECK( validate_graph( s.groups[0].graph() ).ok() );
  }

  TEST_CASE( "no evidence gives one unconstrained group" )
  {
    const auto s = max_consistent_sets( {}, {}, lane_world(), 1 );
    REQUIRE( s.groups.size() == 1 );
    CHECK( s.groups[0].members.empty() );
  }

  TEST_CASE( "self-contradictory evidence is degenerate" )
  {
    const auto s = max_consistent_sets( { { "ghost", parse_formula( "fast & !fast" ), "" } }, {}, lane_world(), 1 );
    CHECK( s.degenerate == std::vector<EntityId>{ "ghost" } );
    REQUIRE( s.groups.size() == 1 );
    CHECK( s.groups[0].members.empty() );
  }

  TEST_CASE( "inconsistent facts are an error" )
  {
    CHECK_THROWS_AS( max_consistent_sets( {}, { parse_formula( "fast & !fast" ) }, lane_world(), 1 ), Error );
  }

  TEST_CASE( "random bases match subset enumeration" )
  {
    std::mt19937_64 rng( 33 );
    const auto w = lane_world();
    for ( int i = 0; i < 60; ++i )
    {
      std::vector<Evidence> ev;
      const auto n = rng() % 6;
      for ( std::uint64_t k = 0; k < n; ++k )
        ev.push_back( { "e" + std::to_string( rng() % 5 ), oracle::random_formula( rng, w.variables, 2, true ), "" } );
      const auto got = max_consistent_sets( ev, {}, w, 1 );
      const auto want = oracle::brute_groups( ev, {}, w, 1 );
      CHECK( members( got ) == want.groups );
      CHECK( got.degenerate == want.degenerate );
    }
  }
}
