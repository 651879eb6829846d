#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace oracle
{

using confres::Op;

bool brute_sat(const confres::sat::CnfProblem& p)
{
  const auto n = p.num_vars;
  for ( std::uint64_t m = 0; m < ( 1ull << n ); ++m )
  {
    auto val = [&]( const confres::sat::Literal& l ) { return ( ( m >> ( l.var - 1 ) ) & 1u ) == ( l.positive ? 1u : 0u ); };
    bool ok = std::all_of( p.assumptions.begin(), p.assumptions.end(), [&]( const auto& a ) { return val( a.second ); } );
    for ( std::size_t i = 0; ok && i < p.clauses.size(); ++i )
      ok = std::any_of( p.clauses[i].begin(), p.clauses[i].end(), val );
    if ( ok )
      return true;
  }
  return false;
}

bool eval(const Formula& f, const Valuation& v)
{
  return eval_trace( f, Trace{ v }, 0 );
}

bool eval_trace(const Formula& f, const Trace& tr, int t)
{
  const int last = static_cast<int>( tr.size() ) - 1;
  switch ( f.op() )
  {
  case Op::Bottom: return false;
  case Op::Top: return true;
  case Op::Var:
  {
    const auto it = tr.at( t ).find( f.name() );
    return it != tr.at( t ).end() && it->second;
  }
  case Op::Not: return !eval_trace( f.body(), tr, t );
  case Op::And: return eval_trace( f.lhs(), tr, t ) && eval_trace( f.rhs(), tr, t );
  case Op::Or: return eval_trace( f.lhs(), tr, t ) || eval_trace( f.rhs(), tr, t );
  case Op::Implies: return !eval_trace( f.lhs(), tr, t ) || eval_trace( f.rhs(), tr, t );
  case Op::Iff: return eval_trace( f.lhs(), tr, t ) == eval_trace( f.rhs(), tr, t );
  case Op::Next: return t < last && eval_trace( f.body(), tr, t + 1 );
  case Op::Prev: return t > 0 && eval_trace( f.body(), tr, t - 1 );
  case Op::Globally:
    for ( int k = t; k <= last; ++k )
    {
      if ( !eval_trace( f.body(), tr, k ) )
        return false;
    }
    return true;
  case Op::Finally:
    for ( int k = t; k <= last; ++k )
    {
      if ( eval_trace( f.body(), tr, k ) )
        return true;
    }
    return false;
  case Op::Historically:
    for ( int k = 0; k <= t; ++k )
    {
      if ( !eval_trace( f.body(), tr, k ) )
        return false;
    }
    return true;
  case Op::Until:
    for ( int k = t; k <= last; ++k )
    {
      if ( eval_trace( f.rhs(), tr, k ) )
        return true;
      if ( !eval_trace( f.lhs(), tr, k ) )
        return false;
    }
    return false;
  case Op::Since:
    for ( int k = t; k >= 0; --k )
    {
      if ( eval_trace( f.rhs(), tr, k ) )
        return true;
      if ( !eval_trace( f.lhs(), tr, k ) )
        return false;
    }
    return false;
  case Op::Belief: throw std::logic_error( "oracle: belief" );
  }
  return false;
}

namespace
{

Valuation with_actions(const confres::WorldModel& w, Valuation v, const std::array<std::string, 3>* choice)
{
  for ( const auto& [r, alpha] : w.alphabets )
  {
    for ( const auto& a : alpha )
      v[a] = choice && ( *choice )[static_cast<std::size_t>( r )] == a;
  }
  return v;
}

bool successor(const confres::WorldModel& w, const Valuation& s, const std::array<std::string, 3>& choice, Valuation& out)
{
  const auto view = with_actions( w, s, &choice );
  std::map<std::string, bool> assigned;
  for ( const auto& rule : w.rules )
  {
    if ( choice[static_cast<std::size_t>( rule.role )] != rule.action || !eval( rule.guard, view ) )
      continue;
    for ( const auto& [var, e] : rule.effects )
    {
      const bool val = eval( e, view );
      const auto [it, fresh] = assigned.emplace( var, val );
      if ( !fresh && it->second != val )
        return false;
    }
  }
  out = s;
  for ( const auto& [var, val] : assigned )
    out[var] = val;
  return true;
}

std::vector<std::array<std::string, 3>> choices(const confres::WorldModel& w)
{
  std::vector<std::array<std::string, 3>> out;
  for ( const auto& a : w.alphabet( confres::Role::A ) )
    for ( const auto& b : w.alphabet( confres::Role::B ) )
      for ( const auto& e : w.alphabet( confres::Role::Env ) )
        out.push_back( { a, b, e } );
  return out;
}

void extend(const confres::WorldModel& w, unsigned horizon, SimRun& r, std::vector<SimRun>& out)
{
  if ( r.states.size() == horizon + 1 )
  {
    out.push_back( r );
    return;
  }
  for ( const auto& c : choices( w ) )
  {
    Valuation next;
    if ( !successor( w, r.states.back(), c, next ) )
      continue;
    r.states.push_back( next );
    r.actions.push_back( c );
    extend( w, horizon, r, out );
    r.states.pop_back();
    r.actions.pop_back();
  }
}

} // namespace

std::vector<SimRun> all_runs(const confres::WorldModel& w, unsigned horizon)
{
  std::vector<SimRun> out;
  const auto n = w.variables.size();
  for ( std::uint64_t m = 0; m < ( 1ull << n ); ++m )
  {
    Valuation s;
    for ( std::size_t i = 0; i < n; ++i )
      s[w.variables[i]] = ( m >> i ) & 1u;
    if ( !eval( w.init, s ) || !eval( w.current, s ) )
      continue;
    SimRun r{ { s }, {} };
    extend( w, horizon, r, out );
  }
  return out;
}

Valuation step_view(const confres::WorldModel& w, const SimRun& r, std::size_t t)
{
  return with_actions( w, r.states.at( t ), t < r.actions.size() ? &r.actions[t] : nullptr );
}

Trace run_view(const confres::WorldModel& w, const SimRun& r)
{
  Trace out;
  for ( std::size_t t = 0; t < r.states.size(); ++t )
    out.push_back( step_view( w, r, t ) );
  return out;
}

namespace
{

bool consistent(const std::vector<Trace>& runs, const std::vector<Formula>& parts)
{
  return std::any_of( runs.begin(), runs.end(), [&]( const Trace& tr ) {
    return std::all_of( parts.begin(), parts.end(), [&]( const Formula& f ) { return eval_trace( f, tr, 0 ); } );
  } );
}

} // namespace

Groups brute_groups(const std::vector<confres::Evidence>& ev, const std::vector<Formula>& facts,
                    const confres::WorldModel& w, unsigned horizon)
{
  std::vector<Trace> runs;
  for ( const auto& r : all_runs( w, horizon ) )
    runs.push_back( run_view( w, r ) );

  std::map<std::string, std::vector<Formula>> bodies;
  for ( const auto& e : ev )
    bodies[e.atom].push_back( e.body );
  std::vector<std::string> atoms;
  Groups out;
  for ( const auto& [a, b] : bodies )
  {
    auto parts = facts;
    parts.insert( parts.end(), b.begin(), b.end() );
    if ( consistent( runs, parts ) )
      atoms.push_back( a );
    else
      out.degenerate.push_back( a );
  }
  std::vector<std::uint64_t> ok;
  for ( std::uint64_t m = 0; m < ( 1ull << atoms.size() ); ++m )
  {
    auto parts = facts;
    for ( std::size_t i = 0; i < atoms.size(); ++i )
    {
      if ( ( m >> i ) & 1u )
        parts.insert( parts.end(), bodies[atoms[i]].begin(), bodies[atoms[i]].end() );
    }
    if ( consistent( runs, parts ) )
      ok.push_back( m );
  }
  for ( const auto m : ok )
  {
    const bool maximal = std::none_of( ok.begin(), ok.end(), [&]( std::uint64_t o ) { return o != m && ( o & m ) == m; } );
    if ( !maximal )
      continue;
    std::vector<std::string> g;
    for ( std::size_t i = 0; i < atoms.size(); ++i )
    {
      if ( ( m >> i ) & 1u )
        g.push_back( atoms[i] );
    }
    out.groups.push_back( g );
  }
  std::sort( out.groups.begin(), out.groups.end() );
  return out;
}

namespace
{

using GoalSet = std::set<std::string>;

std::vector<std::vector<std::string>> sequences(const std::vector<std::string>& alpha, unsigned h)
{
  std::vector<std::vector<std::string>> out{ {} };
  for ( unsigned t = 0; t < h; ++t )
  {
    std::vector<std::vector<std::string>> next;
    for ( const auto& s : out )
    {
      for ( const auto& a : alpha )
      {
        auto x = s;
        x.push_back( a );
        next.push_back( x );
      }
    }
    out = next;
  }
  return out;
}

std::uint64_t weight_of(const std::vector<confres::Goal>& goals, const GoalSet& s)
{
  std::uint64_t sum = 0;
  for ( const auto& g : goals )
    sum += s.count( g.id ) ? g.weight : 0;
  return sum;
}

/// All subsets of some achieved set that have the largest weight.
std::vector<GoalSet> best(const std::vector<confres::Goal>& goals, const std::vector<GoalSet>& achieved)
{
  std::vector<GoalSet> cands;
  std::uint64_t top = 0;
  for ( std::uint64_t m = 0; m < ( 1ull << goals.size() ); ++m )
  {
    GoalSet s;
    for ( std::size_t i = 0; i < goals.size(); ++i )
    {
      if ( ( m >> i ) & 1u )
        s.insert( goals[i].id );
    }
    const bool reachable = std::any_of( achieved.begin(), achieved.end(), [&]( const GoalSet& a ) {
      return std::includes( a.begin(), a.end(), s.begin(), s.end() );
    } );
    if ( !reachable )
      continue;
    const auto wgt = weight_of( goals, s );
    if ( wgt > top || cands.empty() )
    {
      if ( wgt > top )
        cands.clear();
      top = std::max( top, wgt );
    }
    if ( wgt == top )
      cands.push_back( s );
  }
  return cands;
}

bool sub(const GoalSet& a, const GoalSet& b) { return std::includes( b.begin(), b.end(), a.begin(), a.end() ); }

} // namespace

bool brute_conflict(const confres::Problem& p)
{
  const auto& w = p.world;
  const auto h = p.horizon;
  const auto grouping = brute_groups( p.evidences, p.facts, w, h );
  std::map<std::string, Formula> body;
  for ( const auto& e : p.evidences )
    body[e.atom] = body.count( e.atom ) ? Formula::conj( body[e.atom], e.body ) : e.body;

  std::vector<confres::Goal> goals = p.goals_a.goals;
  goals.insert( goals.end(), p.peer.goals_b.goals.begin(), p.peer.goals_b.goals.end() );

  const auto sa = sequences( w.alphabet( confres::Role::A ), h );
  const auto sb = sequences( w.alphabet( confres::Role::B ), h );
  const auto runs = all_runs( w, h );

  // achieved[g][a][b]
  const auto ng = std::max<std::size_t>( grouping.groups.size(), 1 );
  std::vector<std::vector<std::vector<GoalSet>>> ach( ng, std::vector<std::vector<GoalSet>>( sa.size(), std::vector<GoalSet>( sb.size() ) ) );
  for ( std::size_t g = 0; g < ng; ++g )
  {
    std::vector<Formula> cons = p.facts;
    if ( !grouping.groups.empty() )
    {
      for ( const auto& a : grouping.groups[g] )
        cons.push_back( body[a] );
    }
    for ( std::size_t a = 0; a < sa.size(); ++a )
    {
      for ( std::size_t b = 0; b < sb.size(); ++b )
      {
        GoalSet won;
        for ( const auto& goal : goals )
          won.insert( goal.id );
        for ( const auto& r : runs )
        {
          bool follows = true;
          for ( unsigned t = 0; t < h; ++t )
            follows = follows && r.actions[t][0] == sa[a][t] && r.actions[t][1] == sb[b][t];
          if ( !follows )
            continue;
          const auto tr = run_view( w, r );
          if ( !std::all_of( cons.begin(), cons.end(), [&]( const Formula& f ) { return eval_trace( f, tr, 0 ); } ) )
            continue;
          for ( const auto& goal : goals )
          {
            if ( !eval_trace( goal.formula, tr, 0 ) )
              won.erase( goal.id );
          }
        }
        ach[g][a][b] = won;
      }
    }
  }

  std::vector<GoalSet> everywhere;
  for ( std::size_t a = 0; a < sa.size(); ++a )
  {
    for ( std::size_t b = 0; b < sb.size(); ++b )
    {
      GoalSet s = ach[0][a][b];
      for ( std::size_t g = 1; g < ng; ++g )
      {
        GoalSet x;
        std::set_intersection( s.begin(), s.end(), ach[g][a][b].begin(), ach[g][a][b].end(), std::inserter( x, x.end() ) );
        s = x;
      }
      everywhere.push_back( s );
    }
  }
  const auto max_a = best( p.goals_a.goals, everywhere );
  std::vector<std::vector<GoalSet>> max_b( ng );
  for ( std::size_t g = 0; g < ng; ++g )
  {
    std::vector<GoalSet> all;
    for ( std::size_t a = 0; a < sa.size(); ++a )
      for ( std::size_t b = 0; b < sb.size(); ++b )
        all.push_back( ach[g][a][b] );
    max_b[g] = best( p.peer.goals_b.goals, all );
  }

  for ( std::size_t a = 0; a < sa.size(); ++a )
  {
    for ( const auto& phi_a : max_a )
    {
      bool candidate = false;
      for ( std::size_t b = 0; b < sb.size() && !candidate; ++b )
        candidate = sub( phi_a, everywhere[a * sb.size() + b] );
      if ( !candidate )
        continue;
      bool survives = true;
      for ( std::size_t g = 0; g < ng && survives; ++g )
      {
        for ( std::size_t b = 0; b < sb.size() && survives; ++b )
        {
          for ( const auto& phi_b : max_b[g] )
          {
            bool rational = false;
            for ( std::size_t a2 = 0; a2 < sa.size() && !rational; ++a2 )
              rational = sub( phi_b, ach[g][a2][b] );
            if ( !rational )
              continue;
            GoalSet need = phi_a;
            need.insert( phi_b.begin(), phi_b.end() );
            if ( !sub( need, ach[g][a][b] ) )
            {
              survives = false;
              break;
            }
          }
        }
      }
      if ( survives )
        return false;
    }
  }
  return true;
}

confres::sat::CnfProblem random_cnf(std::mt19937_64& rng, unsigned max_vars, unsigned max_clauses, unsigned assumptions)
{
  confres::sat::CnfProblem p;
  p.num_vars = 1 + static_cast<std::uint32_t>( rng() % max_vars );
  const auto nc = rng() % ( max_clauses + 1 );
  auto lit = [&] {
    return confres::sat::Literal{ 1 + static_cast<std::uint32_t>( rng() % p.num_vars ), rng() % 2 == 0 };
  };
  for ( std::uint64_t i = 0; i < nc; ++i )
  {
    confres::sat::Clause c;
    const auto len = 1 + rng() % 3;
    for ( std::uint64_t k = 0; k < len; ++k )
      c.push_back( lit() );
    p.clauses.push_back( c );
  }
  for ( unsigned i = 0; i < assumptions; ++i )
    p.assumptions.emplace_back( i, lit() );
  return p;
}

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth, bool temporal)
{
  std::uniform_int_distribution<int> pick_var( 0, static_cast<int>( vars.size() ) - 1 );
  if ( depth <= 0 || rng() % 5 == 0 )
  {
    switch ( rng() % 8 )
    {
    case 0: return Formula::top();
    case 1: return Formula::bottom();
    default: return Formula::var( vars[static_cast<std::size_t>( pick_var( rng ) )] );
    }
  }
  const int ops = temporal ? 14 : 6;
  const auto k = static_cast<int>( rng() % static_cast<unsigned>( ops ) );
  auto sub = [&] { return random_formula( rng, vars, depth - 1, temporal ); };
  switch ( k )
  {
  case 0: return Formula::negation( sub() );
  case 1: return Formula::conj( sub(), sub() );
  case 2: return Formula::disj( sub(), sub() );
  case 3: return Formula::implies( sub(), sub() );
  case 4: return Formula::iff( sub(), sub() );
  case 5: return Formula::negation( sub() );
  case 6: return Formula::next( sub() );
  case 7: return Formula::prev( sub() );
  case 8: return Formula::until( sub(), sub() );
  case 9: return Formula::since( sub(), sub() );
  case 10: return Formula::globally( sub() );
  case 11: return Formula::finally( sub() );
  case 12: return Formula::historically( sub() );
  default: return Formula::conj( sub(), sub() );
  }
}

namespace
{

confres::Problem random_micro_once(std::mt19937_64& rng)
{
  using confres::Role;
  confres::Problem p;
  auto& w = p.world;
  const auto nv = 1 + rng() % 3;
  for ( std::uint64_t i = 0; i < nv; ++i )
    w.variables.push_back( "v" + std::to_string( i ) );
  w.alphabets[Role::A] = { "a0", "a1" };
  w.alphabets[Role::B] = { "b0", "b1" };
  w.alphabets[Role::Env] = { "idle" };
  if ( rng() % 2 )
    w.init = random_formula( rng, w.variables, 1, false );
  auto names = w.variables;
  for ( const auto* a : { "a0", "a1", "b0", "b1" } )
    names.push_back( a );
  const auto nr = 1 + rng() % 4;
  for ( std::uint64_t i = 0; i < nr; ++i )
  {
    confres::ActionRule r;
    r.role = rng() % 2 ? Role::A : Role::B;
    r.action = w.alphabets[r.role][rng() % 2];
    if ( rng() % 3 == 0 )
      r.guard = random_formula( rng, w.variables, 1, false );
    r.effects.emplace_back( w.variables[rng() % nv], random_formula( rng, names, 2, false ) );
    w.rules.push_back( r );
  }
  p.horizon = 1 + static_cast<unsigned>( rng() % 2 );
  const auto ne = rng() % 4;
  for ( std::uint64_t i = 0; i < ne; ++i )
    p.evidences.push_back( { "e" + std::to_string( i ), random_formula( rng, w.variables, 1, false ), "" } );
  for ( const auto r : { Role::A, Role::B } )
  {
    auto& base = r == Role::A ? p.goals_a : p.peer.goals_b;
    const auto ng = 1 + rng() % 2;
    for ( std::uint64_t i = 0; i < ng; ++i )
      base.goals.push_back( { confres::to_string( r ) + ".g" + std::to_string( i ), r,
                              random_formula( rng, w.variables, 2, true ), 1 + rng() % 4 } );
  }
  return p;
}

} // namespace

confres::Problem random_micro(std::mt19937_64& rng)
{
  for ( ;; )
  {
    auto p = random_micro_once( rng );
    if ( !all_runs( p.world, p.horizon ).empty() )
      return p;
  }
}

} // namespace oracle
