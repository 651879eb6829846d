#include "confres/commands.hpp"
#include "corpus.hpp"

#include <doctest.h>

#include <sstream>

using namespace confres;

TEST_SUITE( "commands" )
{
  TEST_CASE( "sat examples" )
  {
    std::ostringstream out, err;
    CHECK( cmd_sat( "p cnf 1 2\n1 0\n-1 0\n", {}, out, err ) == 20 );
    CHECK( out.str() == "UNSAT\n" );
    out.str( "" );
    CHECK( cmd_sat( "p cnf 1 1\n1 0\n", {}, out, err ) == 10 );
    CHECK( out.str() == "SAT\n1 0\n" );
    CHECK( cmd_sat( "p cnf 1 1\n5 0\n", {}, out, err ) == 2 );
  }

  TEST_CASE( "sat core under assumptions" )
  {
    std::ostringstream out, err;
    SatOptions o;
    o.core = true;
    o.assumptions = "1 2 3\n";
    CHECK( cmd_sat( "p cnf 3 2\n-1 -3 0\n2 0\n", o, out, err ) == 20 );
    CHECK( out.str() == "UNSAT\ncore 1 3 0\n" );
  }

  TEST_CASE( "analyze exit codes" )
  {
    std::ostringstream out, err;
    CHECK( cmd_analyze( corpus::read( "ex3" ), {}, out, err ) == 0 );
    AnalyzeOptions capped;
    capped.max_level = 3;
    CHECK( cmd_analyze( corpus::read( "ex7" ), capped, out, err ) == 10 );
    std::string machine;
    CHECK( cmd_analyze( corpus::read( "ex7" ), {}, out, err, &machine ) == 0 );
    CHECK( machine.find( "\"agreed\": [\n    \"A.col\",\n    \"B.col\",\n    \"B.fast\"\n  ]" ) != std::string::npos );
  }

  TEST_CASE( "malformed scenario prints diagnostics only" )
  {
    std::ostringstream out, err;
    CHECK( cmd_analyze( "horizon: 2\n[variables]\nx\n[goals]\nA.g 1: (x\n", {}, out, err ) == 2 );
    CHECK( out.str().empty() );
    CHECK_FALSE( err.str().empty() );
  }

  TEST_CASE( "budget overflow is an input error" )
  {
    std::ostringstream out, err;
    AnalyzeOptions o;
    o.budget = 2;
    CHECK( cmd_analyze( corpus::read( "ex3" ), o, out, err ) == 2 );
    CHECK( err.str().find( "budget" ) != std::string::npos );
  }

  TEST_CASE( "consistency lists groups and degenerate evidence" )
  {
    std::ostringstream out, err;
    CHECK( cmd_consistency( corpus::read( "ex1_evidence" ), out, err ) == 0 );
    CHECK( out.str() == "group {cam,lidar}\n  model !fast !left\ngroup {cam,radar}\n  model fast !left\ndegenerate ghost\n" );
  }

  TEST_CASE( "explain prints chains" )
  {
    std::ostringstream out, err;
    CHECK( cmd_explain( corpus::read( "ex4_observation" ), {}, out, err ) == 0 );
    CHECK( out.str().find( "<- lidar [core] !fast" ) != std::string::npos );
    out.str( "" );
    CHECK( cmd_explain( corpus::read( "ex3" ), {}, out, err ) == 0 );
    CHECK( out.str() == "no conflict\n" );
  }
}
