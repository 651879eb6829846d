#include "confres/solver.hpp"

#include "confres/formula.hpp"

#include <algorithm>
#include <cassert>

namespace confres::sat
{

Solver::Solver(const CnfProblem& problem) : _num_vars( 0 )
{
  problem.validate();
  grow( problem.num_vars );

  for ( const auto& clause : problem.clauses )
  {
    std::vector<Lit> lits;
    lits.reserve( clause.size() );
    for ( const auto& l : clause )
    {
      lits.push_back( encode( l ) );
    }
    if ( !add_clause( std::move( lits ) ) )
    {
      _trivially_unsat = true;
      break;
    }
  }
  _assumptions = problem.assumptions;
}

void Solver::grow(std::uint32_t num_vars)
{
  if ( num_vars <= _num_vars )
    return;
  _num_vars = num_vars;
  _assign.resize( _num_vars, -1 );
  _var_level.resize( _num_vars, 0 );
  _reason.resize( _num_vars, no_reason );
  _watches.resize( 2 * static_cast<std::size_t>( _num_vars ) );
  _seen.resize( _num_vars, 0 );
}

void Solver::add_clauses(std::uint32_t num_vars, const std::vector<Clause>& clauses)
{
  backtrack( 0 );
  grow( num_vars );
  for ( const auto& clause : clauses )
  {
    if ( _trivially_unsat )
      return;
    std::vector<Lit> lits;
    for ( const auto& l : clause )
    {
      if ( l.var == 0 || l.var > _num_vars )
        throw Error( "literal out of range" );
      lits.push_back( encode( l ) );
    }
    if ( !add_clause( std::move( lits ) ) )
      _trivially_unsat = true;
  }
}

std::int8_t Solver::value(Lit l) const
{
  const auto a = _assign[var_of( l )];
  if ( a < 0 )
    return -1;
  return static_cast<std::int8_t>( ( l & 1u ) ? 1 - a : a );
}

bool Solver::add_clause(std::vector<Lit> lits)
{
  std::sort( lits.begin(), lits.end() );
  lits.erase( std::unique( lits.begin(), lits.end() ), lits.end() );
  for ( std::size_t i = 1; i < lits.size(); ++i )
  {
    if ( lits[i] == neg( lits[i - 1] ) )
      return true; // tautology
  }
  // only called at level 0, where assignments are permanent
  for ( const auto l : lits )
  {
    if ( value( l ) == 1 )
      return true;
  }
  std::erase_if( lits, [&]( Lit l ) { return value( l ) == 0; } );
  if ( lits.empty() )
    return false;
  if ( lits.size() == 1 )
  {
    const auto v = value( lits[0] );
    if ( v == 0 )
      return false;
    if ( v < 0 )
      enqueue( lits[0], no_reason );
    return true;
  }
  const auto idx = static_cast<std::uint32_t>( _clauses.size() );
  _watches[lits[0]].push_back( idx );
  _watches[lits[1]].push_back( idx );
  _clauses.push_back( std::move( lits ) );
  return true;
}

void Solver::enqueue(Lit l, std::int32_t reason)
{
  const auto v = var_of( l );
  _assign[v] = ( l & 1u ) ? 0 : 1;
  _var_level[v] = level();
  _reason[v] = reason;
  _trail.push_back( l );
}

std::int32_t Solver::propagate()
{
  while ( _qhead < _trail.size() )
  {
    const Lit falsified = neg( _trail[_qhead++] );
    auto& ws = _watches[falsified];
    std::size_t i = 0;
    std::size_t j = 0;
    while ( i < ws.size() )
    {
      const auto ci = ws[i++];
      auto& c = _clauses[ci];
      if ( c[0] == falsified )
        std::swap( c[0], c[1] );
      if ( value( c[0] ) == 1 )
      {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for ( std::size_t k = 2; k < c.size(); ++k )
      {
        if ( value( c[k] ) != 0 )
        {
          std::swap( c[1], c[k] );
          _watches[c[1]].push_back( ci );
          moved = true;
          break;
        }
      }
      if ( moved )
        continue;
      ws[j++] = ci;
      if ( value( c[0] ) == 0 )
      {
        while ( i < ws.size() )
          ws[j++] = ws[i++];
        ws.resize( j );
        _qhead = _trail.size();
        return static_cast<std::int32_t>( ci );
      }
      ++_stats.propagations;
      enqueue( c[0], static_cast<std::int32_t>( ci ) );
    }
    ws.resize( j );
  }
  return no_reason;
}

void Solver::analyze(std::int32_t conflict, std::vector<Lit>& learnt, std::uint32_t& backjump)
{
  learnt.assign( 1, 0 );
  int pending = 0;
  bool have_p = false;
  Lit p = 0;
  auto idx = static_cast<std::ptrdiff_t>( _trail.size() ) - 1;
  do
  {
    const auto& c = _clauses[static_cast<std::size_t>( conflict )];
    for ( std::size_t k = have_p ? 1 : 0; k < c.size(); ++k )
    {
      const Lit q = c[k];
      const auto v = var_of( q );
      if ( !_seen[v] && _var_level[v] > 0 )
      {
        _seen[v] = 1;
        if ( _var_level[v] >= level() )
          ++pending;
        else
          learnt.push_back( q );
      }
    }
    while ( !_seen[var_of( _trail[static_cast<std::size_t>( idx )] )] )
      --idx;
    p = _trail[static_cast<std::size_t>( idx )];
    --idx;
    conflict = _reason[var_of( p )];
    _seen[var_of( p )] = 0;
    have_p = true;
    --pending;
  } while ( pending > 0 );
  learnt[0] = neg( p );

  backjump = 0;
  if ( learnt.size() > 1 )
  {
    std::size_t max_i = 1;
    for ( std::size_t k = 2; k < learnt.size(); ++k )
    {
      if ( _var_level[var_of( learnt[k] )] > _var_level[var_of( learnt[max_i] )] )
        max_i = k;
    }
    std::swap( learnt[1], learnt[max_i] );
    backjump = _var_level[var_of( learnt[1] )];
  }
  for ( const auto l : learnt )
    _seen[var_of( l )] = 0;
}

void Solver::analyze_final(Lit falsified, std::vector<Lit>& core_lits)
{
  core_lits.assign( 1, falsified );
  if ( level() == 0 )
    return;
  _seen[var_of( falsified )] = 1;
  for ( auto i = static_cast<std::ptrdiff_t>( _trail.size() ) - 1; i >= static_cast<std::ptrdiff_t>( _trail_lim[0] ); --i )
  {
    const Lit l = _trail[static_cast<std::size_t>( i )];
    const auto v = var_of( l );
    if ( !_seen[v] )
      continue;
    if ( _reason[v] == no_reason )
    {
      core_lits.push_back( l );
    }
    else
    {
      const auto& c = _clauses[static_cast<std::size_t>( _reason[v] )];
      for ( std::size_t k = 1; k < c.size(); ++k )
      {
        if ( _var_level[var_of( c[k] )] > 0 )
          _seen[var_of( c[k] )] = 1;
      }
    }
    _seen[v] = 0;
  }
  _seen[var_of( falsified )] = 0;
}

void Solver::backtrack(std::uint32_t to_level)
{
  if ( level() <= to_level )
    return;
  for ( auto i = _trail.size(); i > _trail_lim[to_level]; --i )
  {
    const auto v = var_of( _trail[i - 1] );
    _assign[v] = -1;
    _reason[v] = no_reason;
    _next_var = std::min( _next_var, v );
  }
  _trail.resize( _trail_lim[to_level] );
  _trail_lim.resize( to_level );
  _qhead = _trail.size();
}

bool Solver::pick_branch(Lit& out)
{
  while ( _next_var < _num_vars && _assign[_next_var] >= 0 )
    ++_next_var;
  if ( _next_var == _num_vars )
    return false;
  out = 2 * _next_var;
  return true;
}

SolveResult Solver::solve() { return solve( _assumptions ); }

SolveResult Solver::solve(const std::vector<std::pair<AssumptionId, Literal>>& assumptions)
{
  SolveResult result;
  backtrack( 0 );
  if ( _trivially_unsat )
    return result;
  _assumptions = assumptions;
  _assumption_lits.clear();
  for ( const auto& [_, lit] : _assumptions )
  {
    if ( lit.var == 0 || lit.var > _num_vars )
      throw Error( "assumption literal out of range" );
    _assumption_lits.push_back( encode( lit ) );
  }

  std::vector<Lit> learnt;
  for ( ;; )
  {
    const auto conflict = propagate();
    if ( conflict != no_reason )
    {
      ++_stats.conflicts;
      if ( level() == 0 )
      {
        _trivially_unsat = true;
        return result;
      }
      std::uint32_t backjump = 0;
      analyze( conflict, learnt, backjump );
      backtrack( backjump );
      if ( learnt.size() == 1 )
      {
        enqueue( learnt[0], no_reason );
      }
      else
      {
        const auto idx = static_cast<std::uint32_t>( _clauses.size() );
        _watches[learnt[0]].push_back( idx );
        _watches[learnt[1]].push_back( idx );
        _clauses.push_back( learnt );
        ++_stats.learnt;
        enqueue( learnt[0], static_cast<std::int32_t>( idx ) );
      }
      continue;
    }

    Lit next = 0;
    if ( level() < _assumption_lits.size() )
    {
      const Lit a = _assumption_lits[level()];
      const auto v = value( a );
      if ( v == 1 )
      {
        _trail_lim.push_back( static_cast<std::uint32_t>( _trail.size() ) );
        continue;
      }
      if ( v == 0 )
      {
        std::vector<Lit> core_lits;
        analyze_final( a, core_lits );
        for ( const auto l : core_lits )
        {
          for ( std::size_t k = 0; k < _assumption_lits.size(); ++k )
          {
            if ( _assumption_lits[k] == l )
            {
              result.core.insert( _assumptions[k].first );
              break;
            }
          }
        }
        return result;
      }
      next = a;
    }
    else if ( !pick_branch( next ) )
    {
      result.sat = true;
      result.model.assign( static_cast<std::size_t>( _num_vars ) + 1, false );
      for ( std::uint32_t v = 0; v < _num_vars; ++v )
        result.model[v + 1] = _assign[v] == 1;
      return result;
    }
    ++_stats.decisions;
    _trail_lim.push_back( static_cast<std::uint32_t>( _trail.size() ) );
    enqueue( next, no_reason );
  }
}

SolveResult solve(const CnfProblem& p)
{
  Solver s( p );
  return s.solve();
}

} // namespace confres::sat
