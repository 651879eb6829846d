#include "confres/cnf.hpp"

#include "confres/formula.hpp"

#include <cstdlib>

namespace confres::sat
{

Literal Literal::from_dimacs(int lit)
{
  if ( lit == 0 )
  {
    throw Error( "0 is not a literal" );
  }
  return Literal{ static_cast<std::uint32_t>( std::abs( lit ) ), lit > 0 };
}

void CnfProblem::validate() const
{
  for ( const auto& clause : clauses )
  {
    for ( const auto& lit : clause )
    {
      if ( lit.var == 0 || lit.var > num_vars )
      {
        throw Error( "literal " + std::to_string( lit.to_dimacs() ) + " out of range for " +
                     std::to_string( num_vars ) + " variables" );
      }
    }
  }
  std::set<AssumptionId> ids;
  for ( const auto& [id, lit] : assumptions )
  {
    if ( !ids.insert( id ).second )
    {
      throw Error( "duplicate assumption id " + std::to_string( id ) );
    }
    if ( lit.var == 0 || lit.var > num_vars )
    {
      throw Error( "assumption literal " + std::to_string( lit.to_dimacs() ) + " out of range" );
    }
  }
}

bool satisfies(const CnfProblem& p, const std::vector<bool>& model)
{
  if ( model.size() != p.num_vars + 1 )
  {
    return false;
  }
  for ( const auto& clause : p.clauses )
  {
    bool ok = false;
    for ( const auto& lit : clause )
    {
      ok = ok || model[lit.var] == lit.positive;
    }
    if ( !ok )
    {
      return false;
    }
  }
  for ( const auto& [_, lit] : p.assumptions )
  {
    if ( model[lit.var] != lit.positive )
    {
      return false;
    }
  }
  return true;
}

CnfProblem restrict_assumptions(const CnfProblem& p, const std::set<AssumptionId>& keep)
{
  CnfProblem out;
  out.num_vars = p.num_vars;
  out.clauses = p.clauses;
  for ( const auto& a : p.assumptions )
  {
    if ( keep.count( a.first ) )
    {
      out.assumptions.push_back( a );
    }
  }
  return out;
}

} // namespace confres::sat
