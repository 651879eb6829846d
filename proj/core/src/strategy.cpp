#include "confres/strategy.hpp"

#include "confres/encoder.hpp"
#include "confres/solver.hpp"
#include "confres/tseitin.hpp"

#include <algorithm>
#include <set>

namespace confres
{

std::string to_string(StrategyMode m) { return m == StrategyMode::Sequence ? "sequence" : "reactive"; }

const std::string& Strategy::action_at(const History& h) const
{
  if ( mode == StrategyMode::Sequence )
  {
    if ( h.empty() || h.size() > sequence.size() )
      throw Error( "strategy has no decision at step " + std::to_string( h.size() ) );
    return sequence[h.size() - 1];
  }
  const auto it = decisions.find( h );
  if ( it == decisions.end() )
    throw Error( "strategy has no decision for this history" );
  return it->second;
}

std::string Strategy::label() const
{
  if ( mode == StrategyMode::Sequence )
  {
    if ( sequence.empty() )
      return "-";
    std::string out;
    for ( const auto& a : sequence )
      out += ( out.empty() ? "" : "," ) + a;
    return out;
  }
  std::string out;
  for ( const auto& [h, a] : decisions )
  {
    if ( !out.empty() )
      out += "; ";
    for ( std::size_t t = 0; t < h.size(); ++t )
    {
      if ( t )
        out += '.';
      for ( const bool b : h[t] )
        out += b ? '1' : '0';
    }
    out += "->" + a;
  }
  return out.empty() ? "-" : out;
}

namespace
{

std::vector<JointAction> all_choices(const WorldModel& w)
{
  std::vector<JointAction> out;
  for ( const auto& a : w.alphabet( Role::A ) )
    for ( const auto& b : w.alphabet( Role::B ) )
      for ( const auto& e : w.alphabet( Role::Env ) )
        out.push_back( { a, b, e } );
  return out;
}

Observation observe(const WorldModel& w, const std::vector<std::string>& vars, const State& s)
{
  Observation o;
  for ( const auto& v : vars )
    o.push_back( s[w.index_of( v )] );
  return o;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap)
{
  std::uint64_t out = 1;
  for ( std::uint64_t i = 0; i < exp; ++i )
  {
    if ( base != 0 && out > cap / base )
      return cap + 1;
    out *= base;
  }
  return out;
}

} // namespace

std::vector<History> reachable_histories(Role r, const WorldModel& w, unsigned horizon)
{
  const auto vars = w.observed_by( r );
  const auto choices = all_choices( w );
  std::set<History> out;
  std::set<std::pair<History, State>> frontier;
  for ( const auto& s : initial_states( w ) )
    frontier.emplace( History{ observe( w, vars, s ) }, s );
  for ( unsigned len = 1; len <= horizon && !frontier.empty(); ++len )
  {
    std::set<std::pair<History, State>> next;
    for ( const auto& [h, s] : frontier )
    {
      out.insert( h );
      if ( len == horizon )
        continue;
      for ( const auto& c : choices )
      {
        if ( const auto succ = successor( w, s, c ) )
        {
          auto h2 = h;
          h2.push_back( observe( w, vars, *succ ) );
          next.emplace( std::move( h2 ), *succ );
        }
      }
    }
    frontier = std::move( next );
  }
  std::vector<History> sorted( out.begin(), out.end() );
  std::stable_sort( sorted.begin(), sorted.end(),
                    []( const History& a, const History& b ) { return a.size() < b.size(); } );
  return sorted;
}

std::vector<Strategy> enumerate_strategies(Role r, const WorldModel& w, unsigned horizon, StrategyMode mode,
                                           std::uint64_t budget)
{
  const auto& alpha = w.alphabet( r );
  if ( alpha.empty() )
    throw Error( "role " + to_string( r ) + " has an empty alphabet" );

  std::vector<History> histories;
  std::size_t slots = horizon;
  if ( mode == StrategyMode::Reactive )
  {
    histories = reachable_histories( r, w, horizon );
    slots = histories.size();
  }
  const auto count = checked_pow( alpha.size(), slots, budget );
  if ( count > budget )
    throw BudgetError( "strategy budget exceeded for role " + to_string( r ) + ": more than " +
                       std::to_string( budget ) + " strategies" );

  std::vector<Strategy> out;
  out.reserve( count );
  std::vector<std::size_t> digits( slots, 0 );
  for ( std::uint64_t n = 0; n < count; ++n )
  {
    Strategy s;
    s.owner = r;
    s.mode = mode;
    for ( std::size_t i = 0; i < slots; ++i )
    {
      if ( mode == StrategyMode::Sequence )
        s.sequence.push_back( alpha[digits[i]] );
      else
        s.decisions.emplace( histories[i], alpha[digits[i]] );
    }
    out.push_back( std::move( s ) );
    for ( std::size_t i = slots; i-- > 0; )
    {
      if ( ++digits[i] < alpha.size() )
        break;
      digits[i] = 0;
    }
  }
  return out;
}

std::vector<Run> runs_of(const JointStrategy& joint, const Formula& constraint, const WorldModel& w, unsigned horizon)
{
  sat::CnfBuilder b;
  b.assert_formula( unroll_world( w, horizon ) );
  b.assert_formula( encode_goal( constraint, horizon, 0, &w ) );
  b.assert_formula( encode_strategy( joint.a, w, horizon ) );
  b.assert_formula( encode_strategy( joint.b, w, horizon ) );

  std::vector<std::uint32_t> projected;
  for ( unsigned t = 0; t <= horizon; ++t )
  {
    for ( const auto& v : w.variables )
      projected.push_back( b.var( timed_name( v, static_cast<int>( t ) ) ) );
    if ( t == horizon )
      break;
    for ( const auto r : all_roles )
      for ( const auto& a : w.alphabet( r ) )
        projected.push_back( b.var( action_var( r, a, static_cast<int>( t ) ) ) );
  }

  std::vector<Run> runs;
  for ( ;; )
  {
    const auto res = sat::solve( b.problem() );
    if ( !res.sat )
      break;
    runs.push_back( decode_run( w, horizon, [&]( const std::string& name ) {
      return b.has_var( name ) && res.value( b.var( name ) );
    } ) );
    sat::Clause block;
    for ( const auto v : projected )
      block.push_back( sat::Literal{ v, !res.value( v ) } );
    b.add_clause( std::move( block ) );
  }
  std::sort( runs.begin(), runs.end() );
  return runs;
}

} // namespace confres
