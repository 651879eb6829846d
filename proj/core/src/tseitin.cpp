#include "confres/tseitin.hpp"

#include <algorithm>

namespace confres::sat
{

CnfBuilder::CnfBuilder(const std::map<std::string, std::uint32_t>& var_map) : _names( var_map )
{
  for ( const auto& [_, idx] : var_map )
  {
    if ( idx == 0 )
      throw Error( "variable index 0 is reserved" );
    _problem.num_vars = std::max( _problem.num_vars, idx );
  }
}

std::uint32_t CnfBuilder::var(const std::string& name)
{
  const auto it = _names.find( name );
  if ( it != _names.end() )
    return it->second;
  const auto idx = fresh();
  _names.emplace( name, idx );
  return idx;
}

std::uint32_t CnfBuilder::fresh() { return ++_problem.num_vars; }

Literal CnfBuilder::constant_false()
{
  if ( _false_var == 0 )
  {
    _false_var = fresh();
    _problem.clauses.push_back( { Literal{ _false_var, false } } );
  }
  return Literal{ _false_var, true };
}

void CnfBuilder::add_clause(Clause c) { _problem.clauses.push_back( std::move( c ) ); }

void CnfBuilder::add_assumption(AssumptionId id, Literal lit) { _problem.assumptions.emplace_back( id, lit ); }

std::map<std::uint32_t, std::string> CnfBuilder::index_names() const
{
  std::map<std::uint32_t, std::string> out;
  for ( const auto& [name, idx] : _names )
    out.emplace( idx, name );
  return out;
}

Literal CnfBuilder::literal(const Formula& f)
{
  if ( const auto it = _cache.find( f.id() ); it != _cache.end() )
    return it->second;

  Literal out;
  switch ( f.op() )
  {
  case Op::Bottom: out = constant_false(); break;
  case Op::Top: out = ~constant_false(); break;
  case Op::Var: out = Literal{ var( f.name() ), true }; break;
  case Op::Not: out = ~literal( f.body() ); break;
  case Op::Implies:
  case Op::And:
  case Op::Or:
  {
    auto a = literal( f.lhs() );
    auto b = literal( f.rhs() );
    // all three reduce to x <-> (a & b) with polarities adjusted
    bool negate_out = false;
    if ( f.op() == Op::Implies )
    {
      b = ~b;
      negate_out = true; // a -> b == !(a & !b)
    }
    else if ( f.op() == Op::Or )
    {
      a = ~a;
      b = ~b;
      negate_out = true;
    }
    const Literal x{ fresh(), true };
    add_clause( { ~x, a } );
    add_clause( { ~x, b } );
    add_clause( { x, ~a, ~b } );
    out = negate_out ? ~x : x;
    break;
  }
  case Op::Iff:
  {
    const auto a = literal( f.lhs() );
    const auto b = literal( f.rhs() );
    const Literal x{ fresh(), true };
    add_clause( { ~x, ~a, b } );
    add_clause( { ~x, a, ~b } );
    add_clause( { x, a, b } );
    add_clause( { x, ~a, ~b } );
    out = x;
    break;
  }
  case Op::Belief: throw Error( "tseitin: belief operator in " + to_string( f ) );
  default: throw Error( "tseitin: temporal operator in " + to_string( f ) );
  }
  _cache.emplace( f.id(), out );
  _keep_alive.push_back( f );
  return out;
}

void CnfBuilder::assert_formula(const Formula& f)
{
  switch ( f.op() )
  {
  case Op::Top: return;
  case Op::And:
    assert_formula( f.lhs() );
    assert_formula( f.rhs() );
    return;
  case Op::Bottom: add_clause( { constant_false() } ); return;
  default: add_clause( { literal( f ) } ); return;
  }
}

bool CnfBuilder::collect_or(const Formula& f, Clause& out)
{
  switch ( f.op() )
  {
  case Op::Bottom: return true;
  case Op::Top: return false;
  case Op::Or: return collect_or( f.lhs(), out ) && collect_or( f.rhs(), out );
  case Op::Implies: return collect_neg_and( f.lhs(), out ) && collect_or( f.rhs(), out );
  default: out.push_back( literal( f ) ); return true;
  }
}

bool CnfBuilder::collect_neg_and(const Formula& f, Clause& out)
{
  switch ( f.op() )
  {
  case Op::Top: return true;
  case Op::Bottom: return false;
  case Op::And: return collect_neg_and( f.lhs(), out ) && collect_neg_and( f.rhs(), out );
  default: out.push_back( ~literal( f ) ); return true;
  }
}

void CnfBuilder::assert_guarded(Literal sel, const Formula& f)
{
  if ( f.op() == Op::And )
  {
    assert_guarded( sel, f.lhs() );
    assert_guarded( sel, f.rhs() );
    return;
  }
  Clause c{ ~sel };
  if ( collect_or( f, c ) )
    add_clause( std::move( c ) );
}

CnfProblem tseitin_transform(const Formula& f, std::map<std::string, std::uint32_t>& var_map)
{
  CnfBuilder b( var_map );
  b.assert_formula( f );
  var_map = b.names();
  return b.problem();
}

} // namespace confres::sat
