#include "confres/goals.hpp"

#include <algorithm>

namespace confres
{

std::uint64_t GoalBase::weight(const GoalSet& s) const
{
  if ( s.empty() )
    return 0;
  if ( const auto it = table.find( s ); it != table.end() )
    return it->second;
  std::uint64_t sum = 0;
  for ( const auto& id : s )
  {
    const auto* g = find( id );
    if ( !g )
      throw Error( "weight of unknown goal '" + id + "'" );
    sum += g->weight;
  }
  return sum;
}

const Goal* GoalBase::find(const GoalId& id) const
{
  for ( const auto& g : goals )
  {
    if ( g.id == id )
      return &g;
  }
  return nullptr;
}

GoalSet GoalBase::ids() const
{
  GoalSet out;
  for ( const auto& g : goals )
    out.insert( g.id );
  return out;
}

std::vector<GoalSet> maximal_subgoals(const GoalBase& goals, const std::vector<GoalSet>& achieved)
{
  const auto known = goals.ids();
  std::set<GoalSet> distinct;
  for ( const auto& a : achieved )
  {
    GoalSet s;
    std::set_intersection( a.begin(), a.end(), known.begin(), known.end(), std::inserter( s, s.end() ) );
    distinct.insert( std::move( s ) );
  }

  std::uint64_t best = 0;
  std::set<GoalSet> winners{ GoalSet{} };
  for ( const auto& a : distinct )
  {
    const std::vector<GoalId> members( a.begin(), a.end() );
    if ( members.size() > 20 )
      throw Error( "too many goals for subset enumeration" );
    for ( std::uint64_t mask = 1; mask < ( 1ull << members.size() ); ++mask )
    {
      GoalSet sub;
      for ( std::size_t i = 0; i < members.size(); ++i )
      {
        if ( mask >> i & 1u )
          sub.insert( members[i] );
      }
      const auto w = goals.weight( sub );
      if ( w > best )
      {
        best = w;
        winners = { sub };
      }
      else if ( w == best )
      {
        winners.insert( sub );
      }
    }
  }
  return { winners.begin(), winners.end() };
}

std::string to_string(const GoalSet& s)
{
  std::string out = "{";
  for ( const auto& id : s )
    out += ( out.size() > 1 ? ", " : "" ) + id;
  return out + "}";
}

} // namespace confres
