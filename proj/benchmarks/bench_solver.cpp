#include "confres/mus.hpp"
#include "confres/solver.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace confres::sat;

namespace
{

/// Random 3-SAT near the phase transition.
CnfProblem random_3sat(std::uint32_t vars, std::mt19937_64& rng, unsigned assumptions = 0)
{
  CnfProblem p;
  p.num_vars = vars;
  const auto clauses = static_cast<std::size_t>( vars * 4.26 );
  for ( std::size_t i = 0; i < clauses; ++i )
  {
    Clause c;
    for ( int k = 0; k < 3; ++k )
      c.push_back( { 1 + static_cast<std::uint32_t>( rng() % vars ), rng() % 2 == 0 } );
    p.clauses.push_back( c );
  }
  for ( unsigned i = 0; i < assumptions; ++i )
    p.assumptions.emplace_back( i, Literal{ 1 + static_cast<std::uint32_t>( rng() % vars ), rng() % 2 == 0 } );
  return p;
}

void BM_Solve3Sat(benchmark::State& state)
{
  std::mt19937_64 rng( 42 );
  std::vector<CnfProblem> ps;
  for ( int i = 0; i < 16; ++i )
    ps.push_back( random_3sat( static_cast<std::uint32_t>( state.range( 0 ) ), rng ) );
  std::size_t i = 0;
  for ( auto _ : state )
    benchmark::DoNotOptimize( solve( ps[i++ % ps.size()] ).sat );
}
BENCHMARK( BM_Solve3Sat )->Arg( 20 )->Arg( 50 )->Arg( 100 );

void BM_MinimizeCore(benchmark::State& state)
{
  std::mt19937_64 rng( 7 );
  std::vector<std::pair<CnfProblem, std::set<AssumptionId>>> ps;
  while ( ps.size() < 8 )
  {
    auto p = random_3sat( 40, rng, 20 );
    const auto r = solve( p );
    if ( !r.sat && !r.core.empty() )
      ps.emplace_back( p, r.core );
  }
  std::size_t i = 0;
  for ( auto _ : state )
  {
    const auto& [p, core] = ps[i++ % ps.size()];
    benchmark::DoNotOptimize( minimize_core( p, core ).size() );
  }
}
BENCHMARK( BM_MinimizeCore );

} // namespace
