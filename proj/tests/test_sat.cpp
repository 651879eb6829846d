#include "confres/dimacs.hpp"
#include "confres/formula_parser.hpp"
#include "confres/mus.hpp"
#include "confres/solver.hpp"
#include "confres/tseitin.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace confres;
using namespace confres::sat;

TEST_SUITE( "sat" )
{
  TEST_CASE( "verdicts match truth tables" )
  {
    std::mt19937_64 rng( 1 );
    for ( int i = 0; i < 2000; ++i )
    {
      const auto p = oracle::random_cnf( rng, 8, 30, 0 );
      const auto r = solve( p );
      REQUIRE( r.sat == oracle::brute_sat( p ) );
      if ( r.sat )
        CHECK( satisfies( p, r.model ) );
    }
  }

  TEST_CASE( "cores are unsatisfiable and minimal after deletion" )
  {
    std::mt19937_64 rng( 2 );
    int checked = 0;
    while ( checked < 200 )
    {
      const auto p = oracle::random_cnf( rng, 6, 12, 5 );
      const auto r = solve( p );
      if ( r.sat || oracle::brute_sat( restrict_assumptions( p, {} ) ) == false )
        continue;
      ++checked;
      CHECK_FALSE( oracle::brute_sat( restrict_assumptions( p, r.core ) ) );
      const auto mus = minimize_core( p, r.core );
      CHECK_FALSE( oracle::brute_sat( restrict_assumptions( p, mus ) ) );
      for ( const auto id : mus )
      {
        auto smaller = mus;
        smaller.erase( id );
        CHECK( oracle::brute_sat( restrict_assumptions( p, smaller ) ) );
      }
    }
  }

  TEST_CASE( "level-zero conflict gives an empty core" )
  {
    CnfProblem p;
    p.num_vars = 2;
    p.clauses = { { { 1, true } }, { { 1, false } } };
    p.assumptions = { { 0, { 2, true } } };
    const auto r = solve( p );
    CHECK_FALSE( r.sat );
    CHECK( r.core.empty() );
  }

  TEST_CASE( "minimize_core rejects satisfiable input" )
  {
    CnfProblem p;
    p.num_vars = 1;
    p.assumptions = { { 0, { 1, true } } };
    CHECK_THROWS_AS( minimize_core( p, { 0 } ), Error );
  }

  TEST_CASE( "dimacs round trip and errors" )
  {
    std::istringstream in( "c hello\np cnf 3 2\n1 -2 0\n3\n0\n" );
    const auto p = read_dimacs( in );
    CHECK( p.num_vars == 3 );
    REQUIRE( p.clauses.size() == 2 );
    CHECK( p.clauses[1] == Clause{ { 3, true } } );
    std::ostringstream out;
    write_dimacs( out, p );
    std::istringstream again( out.str() );
    CHECK( read_dimacs( again ) == p );

    for ( const char* bad : { "p cnf x 1\n1 0\n", "p cnf 1 1\n2 0\n", "p cnf 1 1\n1\n", "p cnf 1 2\n1 0\n", "1 0\n" } )
    {
      std::istringstream b( bad );
      CAPTURE( bad );
      CHECK_THROWS_AS( read_dimacs( b ), Error );
    }
    std::istringstream a( "1 -2\n" );
    CHECK( read_assumptions( a, 2 ).size() == 2 );
    std::istringstream a0( "0\n" );
    CHECK_THROWS_AS( read_assumptions( a0, 2 ), Error );
  }

  TEST_CASE( "tseitin is equisatisfiable and agrees on named variables" )
  {
    std::mt19937_64 rng( 3 );
    const std::vector<std::string> vars{ "p", "q", "r", "s" };
    for ( int i = 0; i < 300; ++i )
    {
      const auto f = oracle::random_formula( rng, vars, 5, false );
      std::map<std::string, std::uint32_t> names;
      const auto cnf = tseitin_transform( f, names );
      bool any = false;
      for ( unsigned m = 0; m < 16; ++m )
      {
        oracle::Valuation v;
        for ( std::size_t k = 0; k < vars.size(); ++k )
          v[vars[k]] = ( m >> k ) & 1u;
        any = any || oracle::eval( f, v );
      }
      const auto r = solve( cnf );
      REQUIRE( r.sat == any );
      if ( r.sat )
      {
        oracle::Valuation v;
        for ( const auto& [n, idx] : names )
          v[n] = r.model[idx];
        CHECK( oracle::eval( f, v ) );
      }
    }
  }

  TEST_CASE( "incremental solving agrees with a fresh truth table" )
  {
    std::mt19937_64 rng( 11 );
    for ( int run = 0; run < 200; ++run )
    {
      auto acc = oracle::random_cnf( rng, 5, 6, 0 );
      Solver s( acc );
      for ( int step = 0; step < 6; ++step )
      {
        const auto more = oracle::random_cnf( rng, 8, 3, 3 );
        acc.num_vars = std::max( acc.num_vars, more.num_vars );
        acc.clauses.insert( acc.clauses.end(), more.clauses.begin(), more.clauses.end() );
        s.add_clauses( acc.num_vars, more.clauses );
        acc.assumptions = more.assumptions;
        const auto r = s.solve( more.assumptions );
        REQUIRE( r.sat == oracle::brute_sat( acc ) );
        if ( r.sat )
          CHECK( satisfies( acc, r.model ) );
        else
          CHECK_FALSE( oracle::brute_sat( restrict_assumptions( acc, r.core ) ) );
      }
    }
  }

  TEST_CASE( "guarded assertions only bind under their selector" )
  {
    std::mt19937_64 rng( 12 );
    const std::vector<std::string> vars{ "p", "q", "r" };
    for ( int i = 0; i < 300; ++i )
    {
      const auto f = oracle::random_formula( rng, vars, 4, false );
      CnfBuilder b;
      for ( const auto& v : vars )
        b.var( v );
      const Literal sel{ b.fresh(), true };
      b.assert_guarded( sel, f );
      bool any = false;
      for ( unsigned m = 0; m < 8; ++m )
      {
        oracle::Valuation v;
        for ( std::size_t k = 0; k < vars.size(); ++k )
          v[vars[k]] = ( m >> k ) & 1u;
        any = any || oracle::eval( f, v );
      }
      Solver s( b.problem() );
      CHECK( s.solve( { { 0, ~sel } } ).sat );
      const auto r = s.solve( { { 0, sel } } );
      REQUIRE( r.sat == any );
      if ( r.sat )
      {
        oracle::Valuation v;
        for ( const auto& n : vars )
          v[n] = r.model[b.var( n )];
        CHECK( oracle::eval( f, v ) );
      }
    }
  }

  TEST_CASE( "tseitin rejects temporal and belief nodes" )
  {
    std::map<std::string, std::uint32_t> names;
    CHECK_THROWS_AS( tseitin_transform( parse_formula( "X p" ), names ), Error );
    CHECK_THROWS_AS( tseitin_transform( parse_formula( "e: p" ), names ), Error );
  }
}
