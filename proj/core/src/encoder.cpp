#include "confres/encoder.hpp"

#include "confres/solver.hpp"
#include "confres/tseitin.hpp"

#include <set>

namespace confres
{

std::string timed_name(const std::string& var, int step) { return var + "@" + std::to_string( step ); }

std::string action_var(Role r, const std::string& action, int step)
{
  return "act:" + to_string( r ) + ":" + action + "@" + std::to_string( step );
}

namespace
{

struct GoalEncoder
{
  int horizon;
  const WorldModel* world;
  std::map<std::pair<const void*, int>, Formula> memo;

  Formula leaf(const std::string& name, int t) const
  {
    if ( world )
    {
      if ( const auto role = world->owner_of( name ) )
        return Formula::var( action_var( *role, name, t ) );
    }
    return Formula::var( timed_name( name, t ) );
  }

  Formula enc(const Formula& f, int t)
  {
    const auto key = std::make_pair( f.id(), t );
    if ( const auto it = memo.find( key ); it != memo.end() )
      return it->second;
    Formula out;
    switch ( f.op() )
    {
    case Op::Bottom: out = Formula::bottom(); break;
    case Op::Top: out = Formula::top(); break;
    case Op::Var: out = leaf( f.name(), t ); break;
    case Op::Not: out = Formula::mk_not( enc( f.body(), t ) ); break;
    case Op::And: out = Formula::mk_and( enc( f.lhs(), t ), enc( f.rhs(), t ) ); break;
    case Op::Or: out = Formula::mk_or( enc( f.lhs(), t ), enc( f.rhs(), t ) ); break;
    case Op::Implies: out = Formula::mk_implies( enc( f.lhs(), t ), enc( f.rhs(), t ) ); break;
    case Op::Iff: out = Formula::mk_iff( enc( f.lhs(), t ), enc( f.rhs(), t ) ); break;
    case Op::Next: out = t + 1 <= horizon ? enc( f.body(), t + 1 ) : Formula::bottom(); break;
    case Op::Prev: out = t >= 1 ? enc( f.body(), t - 1 ) : Formula::bottom(); break;
    case Op::Until:
      out = t > horizon ? Formula::bottom()
                        : Formula::mk_or( enc( f.rhs(), t ), Formula::mk_and( enc( f.lhs(), t ), enc( f, t + 1 ) ) );
      break;
    case Op::Since:
      out = t < 0 ? Formula::bottom()
                  : Formula::mk_or( enc( f.rhs(), t ), Formula::mk_and( enc( f.lhs(), t ), enc( f, t - 1 ) ) );
      break;
    case Op::Globally:
      out = t > horizon ? Formula::top() : Formula::mk_and( enc( f.body(), t ), enc( f, t + 1 ) );
      break;
    case Op::Finally:
      out = t > horizon ? Formula::bottom() : Formula::mk_or( enc( f.body(), t ), enc( f, t + 1 ) );
      break;
    case Op::Historically:
      out = t < 0 ? Formula::top() : Formula::mk_and( enc( f.body(), t ), enc( f, t - 1 ) );
      break;
    case Op::Belief: throw Error( "encode_goal: epistemic subformula " + to_string( f ) );
    }
    memo.emplace( key, out );
    return out;
  }
};

} // namespace

Formula encode_goal(const Formula& g, unsigned horizon, int at, const WorldModel* w)
{
  if ( at < 0 || at > static_cast<int>( horizon ) )
    throw Error( "encode_goal: step " + std::to_string( at ) + " outside horizon" );
  GoalEncoder e{ static_cast<int>( horizon ), w, {} };
  return e.enc( g, at );
}

Formula unroll_world(const WorldModel& w, unsigned horizon)
{
  if ( w.variables.empty() )
    throw Error( "unroll_world: no state variables" );
  GoalEncoder e{ static_cast<int>( horizon ), &w, {} };
  std::vector<Formula> parts{ e.enc( w.init, 0 ), e.enc( w.current, 0 ) };
  for ( int t = 0; t < static_cast<int>( horizon ); ++t )
  {
    for ( const auto r : all_roles )
    {
      const auto& alpha = w.alphabet( r );
      std::vector<Formula> lits;
      for ( const auto& a : alpha )
        lits.push_back( Formula::var( action_var( r, a, t ) ) );
      parts.push_back( Formula::disj( lits ) );
      for ( std::size_t i = 0; i < lits.size(); ++i )
      {
        for ( std::size_t j = i + 1; j < lits.size(); ++j )
          parts.push_back( Formula::mk_not( Formula::mk_and( lits[i], lits[j] ) ) );
      }
    }
    for ( const auto& v : w.variables )
    {
      const auto next = Formula::var( timed_name( v, t + 1 ) );
      std::vector<Formula> fires;
      for ( const auto& rule : w.rules )
      {
        for ( const auto& [target, expr] : rule.effects )
        {
          if ( target != v )
            continue;
          const auto fire =
              Formula::mk_and( Formula::var( action_var( rule.role, rule.action, t ) ), e.enc( rule.guard, t ) );
          fires.push_back( fire );
          parts.push_back( Formula::mk_implies( fire, Formula::mk_iff( next, e.enc( expr, t ) ) ) );
        }
      }
      const auto frame = Formula::mk_iff( next, Formula::var( timed_name( v, t ) ) );
      parts.push_back( Formula::mk_implies( Formula::mk_not( Formula::disj( fires ) ), frame ) );
    }
  }
  return Formula::conj( parts );
}

Formula encode_strategy(const Strategy& s, const WorldModel& w, unsigned horizon)
{
  const auto& alpha = w.alphabet( s.owner );
  auto check_action = [&]( const std::string& a ) {
    if ( std::find( alpha.begin(), alpha.end(), a ) == alpha.end() )
      throw Error( "strategy uses '" + a + "' outside the alphabet of " + to_string( s.owner ) );
  };
  std::vector<Formula> parts;
  if ( s.mode == StrategyMode::Sequence )
  {
    if ( s.sequence.size() != horizon )
      throw Error( "partial strategy: sequence of length " + std::to_string( s.sequence.size() ) + " for horizon " +
                   std::to_string( horizon ) );
    for ( unsigned t = 0; t < horizon; ++t )
    {
      check_action( s.sequence[t] );
      parts.push_back( Formula::var( action_var( s.owner, s.sequence[t], static_cast<int>( t ) ) ) );
    }
    return Formula::conj( parts );
  }

  for ( const auto& h : reachable_histories( s.owner, w, horizon ) )
  {
    if ( !s.decisions.count( h ) )
      throw Error( "partial strategy: no decision for a reachable history of length " + std::to_string( h.size() ) );
  }
  const auto obs = w.observed_by( s.owner );
  for ( const auto& [h, action] : s.decisions )
  {
    check_action( action );
    if ( h.empty() || h.size() > horizon )
      throw Error( "strategy history length outside horizon" );
    std::vector<Formula> match;
    for ( std::size_t t = 0; t < h.size(); ++t )
    {
      if ( h[t].size() != obs.size() )
        throw Error( "observation width mismatch" );
      for ( std::size_t j = 0; j < obs.size(); ++j )
      {
        const auto v = Formula::var( timed_name( obs[j], static_cast<int>( t ) ) );
        match.push_back( h[t][j] ? v : Formula::mk_not( v ) );
      }
    }
    const int step = static_cast<int>( h.size() ) - 1;
    parts.push_back( Formula::mk_implies( Formula::conj( match ), Formula::var( action_var( s.owner, action, step ) ) ) );
  }
  return Formula::conj( parts );
}

FlatProblem flatten(const std::vector<SigmaEntry>& sigma)
{
  FlatProblem out;
  auto add_body = [&]( const EntityId& atom, const Formula& body ) {
    if ( contains_belief( body ) )
      throw Error( "flatten: nested belief under '" + atom + "'" );
    auto [it, inserted] = out.bodies.emplace( atom, body );
    if ( !inserted )
      it->second = Formula::mk_and( it->second, body );
  };
  for ( const auto& [atom, f] : sigma )
  {
    if ( atom )
    {
      if ( !is_identifier( *atom ) )
        throw Error( "flatten: bad atom name '" + *atom + "'" );
      add_body( *atom, f );
    }
    else if ( f.op() == Op::Belief )
    {
      if ( f.group().size() != 1 )
        throw Error( "flatten: belief group " + to_string( f ) + " is not a single atom" );
      add_body( *f.group().begin(), f.body() );
    }
    else if ( contains_belief( f ) )
    {
      throw Error( "flatten: belief below the top level in " + to_string( f ) );
    }
    else
    {
      out.facts.push_back( f );
    }
  }
  return out;
}

Formula flat_conjunction(const FlatProblem& p)
{
  std::vector<Formula> parts;
  for ( const auto& [_, body] : p.bodies )
    parts.push_back( body );
  parts.insert( parts.end(), p.facts.begin(), p.facts.end() );
  return Formula::conj( parts );
}

Run decode_run(const WorldModel& w, unsigned horizon, const std::function<bool(const std::string&)>& value)
{
  Run run;
  for ( unsigned t = 0; t <= horizon; ++t )
  {
    State s( w.variables.size() );
    for ( std::size_t i = 0; i < w.variables.size(); ++i )
      s[i] = value( timed_name( w.variables[i], static_cast<int>( t ) ) );
    run.states.push_back( std::move( s ) );
  }
  for ( unsigned t = 0; t < horizon; ++t )
  {
    JointAction choice;
    for ( const auto r : all_roles )
    {
      for ( const auto& a : w.alphabet( r ) )
      {
        if ( value( action_var( r, a, static_cast<int>( t ) ) ) )
        {
          choice[static_cast<std::size_t>( r )] = a;
          break;
        }
      }
    }
    run.actions.push_back( std::move( choice ) );
  }
  return run;
}

WinCheck check_winning(const Formula& psi, const Formula& world, const Formula& goals, const WorldModel& w,
                       unsigned horizon)
{
  sat::CnfBuilder b;
  b.assert_formula( world );
  b.assert_formula( psi );
  WinCheck out;
  if ( !sat::solve( b.problem() ).sat )
  {
    out.winning = true;
    out.vacuous = true;
    return out;
  }
  b.assert_formula( Formula::mk_not( goals ) );
  const auto r = sat::solve( b.problem() );
  if ( !r.sat )
  {
    out.winning = true;
    return out;
  }
  out.counterexample = decode_run( w, horizon, [&]( const std::string& name ) {
    return b.has_var( name ) && r.value( b.var( name ) );
  } );
  return out;
}

} // namespace confres
