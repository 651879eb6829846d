#include "confres/mus.hpp"

#include "confres/formula.hpp"
#include "confres/solver.hpp"

namespace confres::sat
{

std::set<AssumptionId> minimize_core(const CnfProblem& p, const std::set<AssumptionId>& core)
{
  const auto first = solve( restrict_assumptions( p, core ) );
  if ( first.sat )
  {
    throw Error( "minimize_core: problem is satisfiable under the given core" );
  }
  // The solver's own core is already a subset; start from it.
  std::set<AssumptionId> current = first.core;
  std::set<AssumptionId> confirmed;
  while ( !current.empty() )
  {
    const auto candidate = *current.begin();
    current.erase( current.begin() );
    std::set<AssumptionId> trial = confirmed;
    trial.insert( current.begin(), current.end() );
    const auto r = solve( restrict_assumptions( p, trial ) );
    if ( r.sat )
    {
      confirmed.insert( candidate );
    }
    else
    {
      // drop everything the solver did not need
      std::set<AssumptionId> next;
      for ( const auto id : current )
      {
        if ( r.core.count( id ) )
          next.insert( id );
      }
      for ( const auto id : confirmed )
      {
        if ( !r.core.count( id ) )
          throw Error( "minimize_core: inconsistent solver core" );
      }
      current = std::move( next );
    }
  }
  return confirmed;
}

} // namespace confres::sat
