#include "confres/possible_worlds.hpp"

#include "confres/encoder.hpp"
#include "confres/solver.hpp"
#include "confres/tseitin.hpp"

#include <algorithm>
#include <map>

namespace confres
{

std::string WorldGroup::name() const
{
  std::string out = "{";
  for ( const auto& m : members )
    out += ( out.size() > 1 ? "," : "" ) + m;
  return out + "}";
}

JustificationGraph WorldGroup::graph() const { return JustificationGraph::star( "world" + name(), members ); }

PossibleWorldSet max_consistent_sets(const std::vector<Evidence>& evidences, const std::vector<Formula>& facts,
                                     const WorldModel& w, unsigned horizon)
{
  // merge repeated atoms, keep them ordered by id
  std::map<EntityId, Formula> bodies;
  for ( const auto& e : evidences )
  {
    if ( contains_belief( e.body ) )
      throw Error( "evidence '" + e.atom + "' contains a belief operator" );
    auto [it, inserted] = bodies.emplace( e.atom, e.body );
    if ( !inserted )
      it->second = Formula::mk_and( it->second, e.body );
  }
  std::vector<EntityId> atoms;
  for ( const auto& [a, _] : bodies )
    atoms.push_back( a );

  sat::CnfBuilder b;
  b.assert_formula( unroll_world( w, horizon ) );
  for ( const auto& f : facts )
    b.assert_formula( encode_goal( f, horizon, 0, &w ) );
  std::vector<sat::Literal> selectors;
  for ( const auto& a : atoms )
  {
    const sat::Literal sel{ b.fresh(), true };
    b.add_clause( { ~sel, b.literal( encode_goal( bodies.at( a ), horizon, 0, &w ) ) } );
    selectors.push_back( sel );
  }

  auto consistent = [&]( const std::vector<bool>& in, std::set<sat::AssumptionId>* core ) {
    auto p = b.problem();
    for ( std::size_t i = 0; i < in.size(); ++i )
    {
      if ( in[i] )
        p.assumptions.emplace_back( static_cast<sat::AssumptionId>( i ), selectors[i] );
    }
    auto r = sat::solve( p );
    if ( !r.sat && core )
      *core = std::move( r.core );
    return r.sat;
  };

  const auto n = atoms.size();
  PossibleWorldSet out;
  if ( !consistent( std::vector<bool>( n, false ), nullptr ) )
    throw Error( "facts are inconsistent with the world model" );

  // map solver over "atom i is in the seed"
  sat::CnfProblem map;
  map.num_vars = static_cast<std::uint32_t>( n );
  std::vector<bool> active( n, true );
  for ( std::size_t i = 0; i < n; ++i )
  {
    std::vector<bool> single( n, false );
    single[i] = true;
    if ( !consistent( single, nullptr ) )
    {
      out.degenerate.push_back( atoms[i] );
      active[i] = false;
      map.clauses.push_back( { sat::Literal{ static_cast<std::uint32_t>( i + 1 ), false } } );
    }
  }

  std::set<std::vector<EntityId>> found;
  for ( ;; )
  {
    const auto m = sat::solve( map );
    if ( !m.sat )
      break;
    std::vector<bool> seed( n );
    for ( std::size_t i = 0; i < n; ++i )
      seed[i] = m.value( static_cast<std::uint32_t>( i + 1 ) );

    std::set<sat::AssumptionId> core;
    if ( !consistent( seed, &core ) )
    {
      sat::Clause block;
      for ( const auto id : core )
        block.push_back( sat::Literal{ id + 1, false } );
      map.clauses.push_back( std::move( block ) );
      continue;
    }
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( seed[i] || !active[i] )
        continue;
      seed[i] = true;
      if ( !consistent( seed, nullptr ) )
        seed[i] = false;
    }
    std::vector<EntityId> members;
    sat::Clause block;
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( seed[i] )
        members.push_back( atoms[i] );
      else
        block.push_back( sat::Literal{ static_cast<std::uint32_t>( i + 1 ), true } );
    }
    found.insert( members );
    map.clauses.push_back( std::move( block ) );
  }

  for ( const auto& members : found )
  {
    std::vector<Formula> parts;
    for ( const auto& m : members )
      parts.push_back( bodies.at( m ) );
    parts.insert( parts.end(), facts.begin(), facts.end() );
    out.groups.push_back( { members, Formula::conj( parts ) } );
  }
  return out;
}

} // namespace confres
