#include "confres/scenario.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

using namespace confres;

namespace
{

Problem load(const std::string& name)
{
  std::ifstream in( std::string( CONFRES_SCENARIO_DIR ) + "/" + name + ".scn" );
  std::ostringstream ss;
  ss << in.rdbuf();
  return to_problem( *parse_scenario( ss.str() ).doc );
}

void BM_Analyze(benchmark::State& state, const std::string& name, StrategyMode mode)
{
  auto p = load( name );
  p.mode = mode;
  for ( auto _ : state )
    benchmark::DoNotOptimize( find_strategy( p ).level );
}

BENCHMARK_CAPTURE( BM_Analyze, ex3, std::string( "ex3" ), StrategyMode::Sequence );
BENCHMARK_CAPTURE( BM_Analyze, ex4, std::string( "ex4_observation" ), StrategyMode::Sequence );
BENCHMARK_CAPTURE( BM_Analyze, ex7, std::string( "ex7" ), StrategyMode::Sequence );
BENCHMARK_CAPTURE( BM_Analyze, ex4_reactive, std::string( "ex4_observation" ), StrategyMode::Reactive );

void BM_ParseScenario(benchmark::State& state)
{
  std::ifstream in( std::string( CONFRES_SCENARIO_DIR ) + "/ex7.scn" );
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto text = ss.str();
  for ( auto _ : state )
    benchmark::DoNotOptimize( parse_scenario( text ).doc.has_value() );
}
BENCHMARK( BM_ParseScenario );

} // namespace
