// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "confres/encoder.hpp"
#include "confres/formula_parser.hpp"
#include "confres/mus.hpp"
#include "confres/possible_worlds.hpp"
#include "confres/report.hpp"
#include "confres/solver.hpp"
#include "confres/tseitin.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <functional>
#include <iostream>

using namespace confres;

namespace
{

struct Outcome
{
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>( Clock::now() - t0 ).count(); }

Outcome sat_oracle()
{
  std::mt19937_64 rng( 101 );
  const auto t0 = Clock::now();
  int agree = 0;
  for ( int i = 0; i < 10000; ++i )
  {
    const auto p = oracle::random_cnf( rng, 12, 40, 0 );
    const auto r = sat::solve( p );
    agree += r.sat == oracle::brute_sat( p ) && ( !r.sat || sat::satisfies( p, r.model ) ) ? 1 : 0;
  }
  const auto dt = seconds_since( t0 );
  return { agree == 10000 && dt < 60, std::to_string( agree ) + "/10000 agree, " + std::to_string( dt ) + " s" };
}

Outcome mus_minimality()
{
  std::mt19937_64 rng( 202 );
  const auto t0 = Clock::now();
  int done = 0;
  int good = 0;
  while ( done < 500 )
  {
    const auto p = oracle::random_cnf( rng, 10, 25, 8 );
    if ( !oracle::brute_sat( sat::restrict_assumptions( p, {} ) ) || oracle::brute_sat( p ) )
      continue;
    ++done;
    const auto r = sat::solve( p );
    if ( r.sat )
      continue;
    const auto core = sat::minimize_core( p, r.core );
    bool ok = !oracle::brute_sat( sat::restrict_assumptions( p, core ) );
    for ( const auto id : core )
    {
      auto less = core;
      less.erase( id );
      ok = ok && oracle::brute_sat( sat::restrict_assumptions( p, less ) );
    }
    good += ok ? 1 : 0;
  }
  const auto dt = seconds_since( t0 );
  return { good == 500 && dt < 60, std::to_string( good ) + "/500 minimal, " + std::to_string( dt ) + " s" };
}

Outcome flat_reduction()
{
  std::mt19937_64 rng( 303 );
  const std::vector<std::string> vars{ "p", "q", "r", "s" };
  int agree = 0;
  for ( int i = 0; i < 500; ++i )
  {
    std::vector<SigmaEntry> sigma;
    std::vector<Formula> stripped;
    const auto n = 1 + rng() % 5;
    for ( std::uint64_t k = 0; k < n; ++k )
    {
      const auto body = oracle::random_formula( rng, vars, 3, false );
      const auto atom = "e" + std::to_string( rng() % 3 );
      switch ( rng() % 3 )
      {
      case 0: sigma.emplace_back( atom, body ); break;
      case 1: sigma.emplace_back( std::nullopt, Formula::belief( { atom }, body ) ); break;
      default: sigma.emplace_back( std::nullopt, body ); break;
      }
      stripped.push_back( body );
    }
    std::map<std::string, std::uint32_t> names;
    const bool got = sat::solve( sat::tseitin_transform( flat_conjunction( flatten( sigma ) ), names ) ).sat;
    bool want = false;
    for ( unsigned m = 0; m < 16 && !want; ++m )
    {
      oracle::Valuation v;
      for ( std::size_t k = 0; k < vars.size(); ++k )
        v[vars[k]] = ( m >> k ) & 1u;
      want = std::all_of( stripped.begin(), stripped.end(), [&]( const Formula& f ) { return oracle::eval( f, v ); } );
    }
    agree += got == want ? 1 : 0;
  }
  return { agree == 500, std::to_string( agree ) + "/500 agree" };
}

bool same_groups(const std::vector<Evidence>& ev, const std::vector<Formula>& facts, const WorldModel& w, unsigned h)
{
  const auto got = max_consistent_sets( ev, facts, w, h );
  std::vector<std::vector<std::string>> members;
  for ( const auto& g : got.groups )
    members.push_back( g.members );
  std::sort( members.begin(), members.end() );
  const auto want = oracle::brute_groups( ev, facts, w, h );
  return members == want.groups && got.degenerate == want.degenerate;
}

Outcome consistent_sets()
{
  int total = 0;
  int agree = 0;
  for ( const auto& name : corpus::names )
  {
    const auto p = corpus::problem( name );
    auto ev = p.evidences;
    ev.insert( ev.end(), p.peer.truths.begin(), p.peer.truths.end() );
    ++total;
    agree += same_groups( ev, p.facts, p.world, p.horizon ) ? 1 : 0;
  }
  std::mt19937_64 rng( 404 );
  for ( int i = 0; i < 200; ++i )
  {
    const auto p = oracle::random_micro( rng );
    std::vector<Evidence> ev;
    const auto n = rng() % 9;
    for ( std::uint64_t k = 0; k < n; ++k )
      ev.push_back( { "e" + std::to_string( k ), oracle::random_formula( rng, p.world.variables, 2, true ), "" } );
    ++total;
    agree += same_groups( ev, {}, p.world, p.horizon ) ? 1 : 0;
  }
  return { agree == total, std::to_string( agree ) + "/" + std::to_string( total ) + " bases agree" };
}

/// Every formula of depth <= 1, every unary wrapper of those, and random
/// formulas of depth 2..3, each checked on all timed assignments.
Outcome bounded_ltl()
{
  const std::vector<std::string> vars{ "p", "q", "r" };
  std::vector<Formula> leaves{ Formula::top(), Formula::bottom() };
  for ( const auto& v : vars )
    leaves.push_back( Formula::var( v ) );
  const std::vector<std::function<Formula( Formula )>> unary{
      Formula::negation, Formula::next, Formula::prev, Formula::globally, Formula::finally, Formula::historically };
  const std::vector<std::function<Formula( Formula, Formula )>> binary{
      []( Formula a, Formula b ) { return Formula::conj( a, b ); },
      []( Formula a, Formula b ) { return Formula::disj( a, b ); },
      Formula::implies, Formula::iff, Formula::until, Formula::since };
  std::vector<Formula> depth1 = leaves;
  for ( const auto& u : unary )
    for ( const auto& l : leaves )
      depth1.push_back( u( l ) );
  for ( const auto& b : binary )
    for ( const auto& l : leaves )
      for ( const auto& r : leaves )
        depth1.push_back( b( l, r ) );
  std::vector<Formula> all = depth1;
  for ( const auto& u : unary )
    for ( const auto& f : depth1 )
      all.push_back( u( f ) );
  std::mt19937_64 rng( 505 );
  for ( int i = 0; i < 1500; ++i )
    all.push_back( oracle::random_formula( rng, vars, 2 + static_cast<int>( rng() % 2 ), true ) );

  long checks = 0;
  long agree = 0;
  for ( const auto& f : all )
  {
    for ( unsigned h = 0; h <= 3; ++h )
    {
      std::vector<Formula> enc;
      for ( unsigned at = 0; at <= h; ++at )
        enc.push_back( encode_goal( f, h, static_cast<int>( at ) ) );
      const auto bits = vars.size() * ( h + 1 );
      for ( std::uint64_t m = 0; m < ( 1ull << bits ); ++m )
      {
        oracle::Trace tr( h + 1 );
        oracle::Valuation timed;
        for ( unsigned t = 0; t <= h; ++t )
        {
          for ( std::size_t i = 0; i < vars.size(); ++i )
          {
            const bool b = ( m >> ( t * vars.size() + i ) ) & 1u;
            tr[t][vars[i]] = b;
            timed[timed_name( vars[i], static_cast<int>( t ) )] = b;
          }
        }
        for ( unsigned at = 0; at <= h; ++at )
        {
          ++checks;
          agree += oracle::eval( enc[at], timed ) == oracle::eval_trace( f, tr, static_cast<int>( at ) ) ? 1 : 0;
        }
      }
    }
  }
  return { agree == checks, std::to_string( all.size() ) + " formulas, " + std::to_string( agree ) + "/" +
                                std::to_string( checks ) + " timed checks agree" };
}

Outcome conflict_equivalence()
{
  std::mt19937_64 rng( 606 );
  const auto t0 = Clock::now();
  int agree = 0;
  int conflicts = 0;
  for ( int i = 0; i < 100; ++i )
  {
    auto p = oracle::random_micro( rng );
    p.max_level = 0;
    const bool want = oracle::brute_conflict( p );
    conflicts += want ? 1 : 0;
    agree += find_strategy( p ).conflict == want ? 1 : 0;
  }
  const auto dt = seconds_since( t0 );
  return { agree == 100 && dt < 300, std::to_string( agree ) + "/100 agree (" + std::to_string( conflicts ) +
                                         " with a conflict), " + std::to_string( dt ) + " s" };
}

bool has_event(const AnalysisResult& r, const std::string& kind)
{
  return std::any_of( r.trace.begin(), r.trace.end(), [&]( const TraceEvent& e ) { return e.kind == kind; } );
}

Outcome narratives()
{
  std::string detail;
  bool ok = true;
  auto check = [&]( const std::string& name, const std::function<bool( const AnalysisResult& )>& pred, int max_level = 4 ) {
    auto p = corpus::problem( name );
    p.max_level = max_level;
    const auto t0 = Clock::now();
    const auto r = find_strategy( p );
    const bool pass = pred( r ) && seconds_since( t0 ) < 10;
    ok = ok && pass;
    detail += name + ( max_level < 4 ? "@" + std::to_string( max_level ) : "" ) + ( pass ? " ok" : " FAILED" ) + "; ";
  };
  check( "ex3", []( const AnalysisResult& r ) {
    return !r.conflict && r.resolved && r.level == 0 && !r.winning.empty() && r.winning[0].first.a.label() == "stay,stay";
  } );
  check( "ex4_observation", []( const AnalysisResult& r ) {
    return r.conflict && r.resolved && r.level == 1 && has_event( r, "c1-accept" ) &&
           std::all_of( r.winning.begin(), r.winning.end(), []( const auto& w ) { return w.first.a.label() == "stay,change"; } );
  } );
  check( "ex5", []( const AnalysisResult& r ) {
    return r.conflict && r.resolved && r.level == 2 && has_event( r, "c1-accept" ) && has_event( r, "c2-commit" );
  } );
  check( "ex6", []( const AnalysisResult& r ) {
    return r.conflict && r.resolved && r.level == 3 && !has_event( r, "c2-commit" ) && has_event( r, "c3-adopt" );
  } );
  check( "ex7", []( const AnalysisResult& r ) {
    return r.conflict && r.resolved && r.level == 4 && r.agreed && *r.agreed == GoalSet{ "A.col", "B.col", "B.fast" };
  } );
  check( "ex7", []( const AnalysisResult& r ) { return r.conflict && !r.resolved; }, 3 );
  return { ok, detail };
}

Outcome refinement()
{
  int total = 0;
  int good = 0;
  for ( const auto& name : corpus::names )
  {
    for ( const auto& ref : find_strategy( corpus::problem( name ) ).refinements )
    {
      ++total;
      good += ref.ok ? 1 : 0;
    }
  }
  return { total > 0 && good == total, std::to_string( good ) + "/" + std::to_string( total ) + " refinements hold" };
}

Outcome determinism()
{
  int same = 0;
  for ( const auto& name : corpus::names )
  {
    const auto d = corpus::doc( name );
    const auto p = to_problem( d );
    const auto a = to_json( make_report( d.name, p, find_strategy( p ) ) );
    const auto b = to_json( make_report( d.name, p, find_strategy( p ) ) );
    same += a == b ? 1 : 0;
  }
  return { same == static_cast<int>( corpus::names.size() ),
           std::to_string( same ) + "/" + std::to_string( corpus::names.size() ) + " byte-identical" };
}

} // namespace

int main(int argc, char** argv)
{
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      { "sat oracle equivalence", sat_oracle },
      { "mus minimality", mus_minimality },
      { "flat belief reduction", flat_reduction },
      { "maximal consistent sets", consistent_sets },
      { "bounded temporal encoding", bounded_ltl },
      { "conflict definition equivalence", conflict_equivalence },
      { "narrative reproduction", narratives },
      { "monotonic refinement", refinement },
      { "determinism", determinism },
  };
  bool all = true;
  // optional arguments select criteria by number
  std::set<std::size_t> only;
  for ( int i = 1; i < argc; ++i )
    only.insert( static_cast<std::size_t>( std::atoi( argv[i] ) ) );
  for ( std::size_t i = 0; i < criteria.size(); ++i )
  {
    if ( !only.empty() && !only.count( i + 1 ) )
      continue;
    Outcome o;
    try
    {
      o = criteria[i].second();
    }
    catch ( const std::exception& e )
    {
      o = { false, std::string( "exception: " ) + e.what() };
    }
    all = all && o.ok;
    std::printf( "%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str() );
    std::fflush( stdout );
  }
  return all ? 0 : 1;
}
