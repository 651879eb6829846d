#include "confres/world_model.hpp"

#include "confres/formula_parser.hpp"

#include <algorithm>
#include <set>

namespace confres
{

std::string to_string(Role r)
{
  switch ( r )
  {
  case Role::A: return "A";
  case Role::B: return "B";
  case Role::Env: return "Env";
  }
  return "?";
}

namespace
{

void check_condition(const WorldModel& w, const Formula& f, bool allow_actions, const std::string& where)
{
  if ( contains_belief( f ) || contains_temporal( f ) )
    throw Error( where + ": condition must be propositional: " + to_string( f ) );
  for ( const auto& v : variables_of( f ) )
  {
    if ( w.is_variable( v ) )
      continue;
    if ( allow_actions && w.owner_of( v ) )
      continue;
    throw Error( where + ": unknown name '" + v + "'" );
  }
}

} // namespace

void WorldModel::validate() const
{
  if ( variables.empty() )
    throw Error( "world model declares no variables" );
  std::set<std::string> names;
  for ( const auto& v : variables )
  {
    if ( !is_identifier( v ) || is_reserved_word( v ) )
      throw Error( "bad variable name '" + v + "'" );
    if ( !names.insert( v ).second )
      throw Error( "variable '" + v + "' declared twice" );
  }
  for ( const auto r : all_roles )
  {
    const auto it = alphabets.find( r );
    if ( it == alphabets.end() || it->second.empty() )
      throw Error( "role " + to_string( r ) + " has no actions" );
    for ( const auto& a : it->second )
    {
      if ( !is_identifier( a ) || is_reserved_word( a ) )
        throw Error( "bad action name '" + a + "'" );
      if ( !names.insert( a ).second )
        throw Error( "action '" + a + "' clashes with another variable or action; agent alphabets must be disjoint" );
    }
  }
  for ( const auto& [r, vars] : observed )
  {
    for ( const auto& v : vars )
    {
      if ( !is_variable( v ) )
        throw Error( "role " + to_string( r ) + " observes unknown variable '" + v + "'" );
    }
  }
  check_condition( *this, init, false, "init" );
  check_condition( *this, current, false, "current" );
  for ( const auto& rule : rules )
  {
    const auto& alpha = alphabet( rule.role );
    const auto where = "rule " + to_string( rule.role ) + "." + rule.action;
    if ( std::find( alpha.begin(), alpha.end(), rule.action ) == alpha.end() )
      throw Error( where + ": action not in the alphabet of " + to_string( rule.role ) );
    check_condition( *this, rule.guard, true, where );
    for ( const auto& [v, expr] : rule.effects )
    {
      if ( !is_variable( v ) )
        throw Error( where + ": assigns unknown variable '" + v + "'" );
      check_condition( *this, expr, true, where );
    }
  }
}

const std::vector<std::string>& WorldModel::alphabet(Role r) const
{
  const auto it = alphabets.find( r );
  if ( it == alphabets.end() )
    throw Error( "role " + to_string( r ) + " has no alphabet" );
  return it->second;
}

std::vector<std::string> WorldModel::observed_by(Role r) const
{
  const auto it = observed.find( r );
  return it == observed.end() ? variables : it->second;
}

std::optional<Role> WorldModel::owner_of(const std::string& action) const
{
  for ( const auto& [r, alpha] : alphabets )
  {
    if ( std::find( alpha.begin(), alpha.end(), action ) != alpha.end() )
      return r;
  }
  return std::nullopt;
}

bool WorldModel::is_variable(const std::string& name) const
{
  return std::find( variables.begin(), variables.end(), name ) != variables.end();
}

std::size_t WorldModel::index_of(const std::string& var) const
{
  const auto it = std::find( variables.begin(), variables.end(), var );
  if ( it == variables.end() )
    throw Error( "unknown variable '" + var + "'" );
  return static_cast<std::size_t>( it - variables.begin() );
}

bool holds(const WorldModel& w, const Formula& f, const State& s, const JointAction* choice)
{
  std::map<std::string, bool> env;
  for ( std::size_t i = 0; i < w.variables.size(); ++i )
    env[w.variables[i]] = s[i];
  if ( choice )
  {
    for ( const auto& a : *choice )
      env[a] = true;
  }
  return evaluate_propositional( f, env );
}

std::vector<State> initial_states(const WorldModel& w)
{
  const auto n = w.variables.size();
  if ( n > 20 )
    throw Error( "too many variables for explicit enumeration" );
  std::vector<State> out;
  for ( std::uint64_t bits = 0; bits < ( 1ull << n ); ++bits )
  {
    State s( n );
    for ( std::size_t i = 0; i < n; ++i )
      s[i] = ( bits >> ( n - 1 - i ) ) & 1u;
    if ( holds( w, w.init, s ) && holds( w, w.current, s ) )
      out.push_back( std::move( s ) );
  }
  return out;
}

std::optional<State> successor(const WorldModel& w, const State& s, const JointAction& choice)
{
  State next = s;
  std::vector<bool> assigned( s.size(), false );
  for ( const auto& rule : w.rules )
  {
    if ( choice[static_cast<std::size_t>( rule.role )] != rule.action || !holds( w, rule.guard, s, &choice ) )
      continue;
    for ( const auto& [v, expr] : rule.effects )
    {
      const auto i = w.index_of( v );
      const bool value = holds( w, expr, s, &choice );
      if ( assigned[i] && next[i] != value )
        return std::nullopt;
      assigned[i] = true;
      next[i] = value;
    }
  }
  return next;
}

std::string render_state(const WorldModel& w, const State& s)
{
  std::string out;
  for ( std::size_t i = 0; i < w.variables.size(); ++i )
  {
    if ( !out.empty() )
      out += ' ';
    if ( !s[i] )
      out += '!';
    out += w.variables[i];
  }
  return out;
}

} // namespace confres
