#include "confres/engine.hpp"

#include "confres/encoder.hpp"
#include "confres/mus.hpp"
#include "confres/solver.hpp"

#include <algorithm>
#include <set>

namespace confres
{

namespace
{

bool subset(const GoalSet& a, const GoalSet& b) { return std::includes( b.begin(), b.end(), a.begin(), a.end() ); }

GoalSet unite(const GoalSet& a, const GoalSet& b)
{
  GoalSet out = a;
  out.insert( b.begin(), b.end() );
  return out;
}

GoalSet intersect(const GoalSet& a, const GoalSet& b)
{
  GoalSet out;
  std::set_intersection( a.begin(), a.end(), b.begin(), b.end(), std::inserter( out, out.end() ) );
  return out;
}

bool keeps_commitment(const Strategy& s, const Commitment& c)
{
  auto ok = [&]( std::size_t step, const std::string& action ) {
    if ( c.step && *c.step != step )
      return true;
    return evaluate_propositional( c.constraint, { { action, true } } );
  };
  if ( s.mode == StrategyMode::Sequence )
  {
    for ( std::size_t t = 0; t < s.sequence.size(); ++t )
    {
      if ( !ok( t, s.sequence[t] ) )
        return false;
    }
    return true;
  }
  for ( const auto& [h, a] : s.decisions )
  {
    if ( !ok( h.size() - 1, a ) )
      return false;
  }
  return true;
}

std::map<EntityId, Formula> merged_bodies(const std::vector<Evidence>& evidences)
{
  std::map<EntityId, Formula> out;
  for ( const auto& e : evidences )
  {
    auto [it, inserted] = out.emplace( e.atom, e.body );
    if ( !inserted )
      it->second = Formula::mk_and( it->second, e.body );
  }
  return out;
}

void assert_world(sat::CnfBuilder& b, const Problem& p, const std::vector<Formula>& facts)
{
  b.assert_formula( unroll_world( p.world, p.horizon ) );
  for ( const auto& f : facts )
    b.assert_formula( encode_goal( f, p.horizon, 0, &p.world ) );
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ",")
{
  std::string out;
  for ( const auto& x : xs )
    out += ( out.empty() ? "" : sep ) + x;
  return out;
}

std::string render_run(const WorldModel& w, const Run& r)
{
  std::string out;
  for ( std::size_t t = 0; t < r.states.size(); ++t )
  {
    out += ( t ? " " : "" ) + std::string( "[" ) + render_state( w, r.states[t] ) + "]";
    if ( t < r.actions.size() )
      out += " --" + r.actions[t][0] + "/" + r.actions[t][1] + "/" + r.actions[t][2] + "->";
  }
  return out;
}

} // namespace

struct Attempt::GroupCnf
{
  sat::CnfBuilder builder;
  std::map<GoalId, sat::Literal> goal_lits;
  std::map<std::pair<Role, std::size_t>, sat::Literal> psi;
  // incremental solver fed with the builder's clauses as they appear
  std::unique_ptr<sat::Solver> solver;
  std::size_t synced = 0;

  sat::Solver& sync()
  {
    const auto& prob = builder.problem();
    if ( !solver )
    {
      solver = std::make_unique<sat::Solver>( prob );
      synced = prob.clauses.size();
    }
    else
    {
      const std::vector<sat::Clause> fresh( prob.clauses.begin() + static_cast<std::ptrdiff_t>( synced ),
                                            prob.clauses.end() );
      solver->add_clauses( prob.num_vars, fresh );
      synced = prob.clauses.size();
    }
    return *solver;
  }
};

Attempt::Attempt(const Problem& p, const InformationBase& info, const GoalState& goals)
    : _p( p ), _info( info ), _goals( goals )
{
  _worlds = max_consistent_sets( _info.evidences, _info.facts, _p.world, _p.horizon );
  _sa = enumerate_strategies( Role::A, _p.world, _p.horizon, _p.mode, _p.budget );
  _sb = enumerate_strategies( Role::B, _p.world, _p.horizon, _p.mode, _p.budget );
  if ( _sb.size() > 0 && _sa.size() > _p.budget / _sb.size() )
    throw BudgetError( "joint strategy budget exceeded: " + std::to_string( _sa.size() ) + " x " +
                       std::to_string( _sb.size() ) + " > " + std::to_string( _p.budget ) );
  for ( std::size_t i = 0; i < _sb.size(); ++i )
  {
    bool ok = true;
    for ( const auto& c : _info.commitments )
      ok = ok && keeps_commitment( _sb[i], c );
    if ( ok )
      _admissible_b.push_back( i );
  }
  for ( const auto* base : { &_goals.a, &_goals.b } )
  {
    for ( const auto& g : base->goals )
    {
      auto [it, inserted] = _goal_formulas.emplace( g.id, g.formula );
      if ( !inserted && it->second != g.formula )
        throw Error( "goal '" + g.id + "' defined twice with different formulas" );
    }
  }
  for ( const auto& group : _worlds.groups )
  {
    auto cnf = std::make_unique<GroupCnf>();
    assert_world( cnf->builder, _p, {} );
    cnf->builder.assert_formula( encode_goal( group.constraint, _p.horizon, 0, &_p.world ) );
    for ( const auto& [id, f] : _goal_formulas )
      cnf->goal_lits.emplace( id, cnf->builder.literal( encode_goal( f, _p.horizon, 0, &_p.world ) ) );
    _cnf.push_back( std::move( cnf ) );
  }
}

Attempt::~Attempt() = default;

const Formula& Attempt::goal_formula(const GoalId& id) const
{
  const auto it = _goal_formulas.find( id );
  if ( it == _goal_formulas.end() )
    throw Error( "unknown goal '" + id + "'" );
  return it->second;
}

const Attempt::Entry& Attempt::entry(std::size_t g, std::size_t a, std::size_t b)
{
  const auto key = std::make_tuple( g, a, b );
  if ( const auto it = _table.find( key ); it != _table.end() )
    return it->second;

  auto& cnf = *_cnf.at( g );
  auto psi = [&]( Role r, std::size_t i ) {
    const auto k = std::make_pair( r, i );
    if ( const auto it = cnf.psi.find( k ); it != cnf.psi.end() )
      return it->second;
    const auto& s = r == Role::A ? _sa[i] : _sb[i];
    // one-sided, so unused strategies never propagate
    const sat::Literal lit{ cnf.builder.fresh(), true };
    cnf.builder.assert_guarded( lit, encode_strategy( s, _p.world, _p.horizon ) );
    cnf.psi.emplace( k, lit );
    return lit;
  };
  const auto la = psi( Role::A, a );
  const auto lb = psi( Role::B, b );

  Entry e;
  auto& solver = cnf.sync();
  ++_solver_calls;
  const auto base = solver.solve( { { 0, la }, { 1, lb } } );
  if ( !base.sat )
  {
    e.vacuous = true;
    for ( const auto& [id, _] : _goal_formulas )
      e.achieved.insert( id );
    return _table.emplace( key, std::move( e ) ).first->second;
  }
  GoalSet failed;
  auto note_model = [&]( const sat::SolveResult& r ) {
    for ( const auto& [id, lit] : cnf.goal_lits )
    {
      if ( !r.value( lit ) )
        failed.insert( id );
    }
  };
  note_model( base );
  for ( const auto& [id, lit] : cnf.goal_lits )
  {
    if ( failed.count( id ) )
      continue;
    ++_solver_calls;
    const auto r = solver.solve( { { 0, la }, { 1, lb }, { 2, ~lit } } );
    if ( r.sat )
      note_model( r );
    else
      e.achieved.insert( id );
  }
  return _table.emplace( key, std::move( e ) ).first->second;
}

const GoalSet& Attempt::achieved(std::size_t g, std::size_t a, std::size_t b) { return entry( g, a, b ).achieved; }

bool Attempt::vacuous(std::size_t g, std::size_t a, std::size_t b) { return entry( g, a, b ).vacuous; }

namespace
{

GoalSet achieved_everywhere(Attempt& at, std::size_t a, std::size_t b)
{
  GoalSet out;
  for ( std::size_t g = 0; g < at.worlds().groups.size(); ++g )
    out = g == 0 ? at.achieved( g, a, b ) : intersect( out, at.achieved( g, a, b ) );
  return out;
}

} // namespace

std::vector<GoalSet> goals_a_max(Attempt& at)
{
  std::vector<GoalSet> achieved;
  for ( std::size_t a = 0; a < at.strategies( Role::A ).size(); ++a )
  {
    for ( const auto b : at.admissible_b() )
      achieved.push_back( achieved_everywhere( at, a, b ) );
  }
  return maximal_subgoals( at.goals().a, achieved );
}

std::vector<GoalSet> goals_b_max(Attempt& at, std::size_t group)
{
  if ( const auto it = at._max_b.find( group ); it != at._max_b.end() )
    return it->second;
  std::vector<GoalSet> achieved;
  for ( std::size_t a = 0; a < at.strategies( Role::A ).size(); ++a )
  {
    for ( const auto b : at.admissible_b() )
      achieved.push_back( at.achieved( group, a, b ) );
  }
  return at._max_b.emplace( group, maximal_subgoals( at.goals().b, achieved ) ).first->second;
}

std::vector<Candidate> strat_a(Attempt& at)
{
  std::vector<Candidate> out;
  const auto& agreed = at.goals().agreed;
  const auto max = agreed ? std::vector<GoalSet>{} : goals_a_max( at );
  for ( std::size_t a = 0; a < at.strategies( Role::A ).size(); ++a )
  {
    for ( const auto b : at.admissible_b() )
    {
      const auto won = achieved_everywhere( at, a, b );
      if ( agreed )
      {
        if ( subset( *agreed, won ) )
          out.push_back( { a, b, *agreed } );
        continue;
      }
      for ( const auto& phi : max )
      {
        if ( subset( phi, won ) )
          out.push_back( { a, b, phi } );
      }
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> strat_b(Attempt& at, std::size_t group)
{
  if ( const auto it = at._strat_b.find( group ); it != at._strat_b.end() )
    return it->second;
  const auto max = goals_b_max( at, group );
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for ( std::size_t a = 0; a < at.strategies( Role::A ).size(); ++a )
  {
    for ( const auto b : at.admissible_b() )
    {
      const auto& won = at.achieved( group, a, b );
      if ( std::any_of( max.begin(), max.end(), [&]( const GoalSet& phi ) { return subset( phi, won ); } ) )
        out.emplace_back( a, b );
    }
  }
  return at._strat_b.emplace( group, std::move( out ) ).first->second;
}

std::optional<ConflictCause> test_if_not_winning(Attempt& at, const Candidate& cand)
{
  if ( at.goals().agreed )
    return std::nullopt; // coalition: both agents follow the agreed joint strategy
  for ( std::size_t g = 0; g < at.worlds().groups.size(); ++g )
  {
    const auto max_b = goals_b_max( at, g );
    for ( const auto& [a2, b] : strat_b( at, g ) )
    {
      for ( const auto& phi_b : max_b )
      {
        if ( !subset( phi_b, at.achieved( g, a2, b ) ) )
          continue;
        const auto need = unite( cand.phi_a, phi_b );
        if ( subset( need, at.achieved( g, cand.a, b ) ) )
          continue;
        auto cause = get_justifications( at, g, cand.a, b, need );
        cause.candidate = at.joint( cand.a, cand.b ).label();
        return cause;
      }
    }
  }
  return std::nullopt;
}

ConflictCause get_justifications(Attempt& at, std::size_t g, std::size_t a, std::size_t b, const GoalSet& goals)
{
  const auto& p = at.problem();
  const auto& w = p.world;
  const auto h = p.horizon;
  const auto& group = at.worlds().groups.at( g );
  const auto joint = at.joint( a, b );
  const auto psi = Formula::mk_and( encode_strategy( joint.a, w, h ), encode_strategy( joint.b, w, h ) );

  std::vector<Formula> goal_parts;
  for ( const auto& id : goals )
    goal_parts.push_back( encode_goal( at.goal_formula( id ), h, 0, &w ) );
  const auto goal_conj = Formula::conj( goal_parts );

  // a run of the recombined strategy violating the goals
  sat::CnfBuilder wb;
  assert_world( wb, p, {} );
  wb.assert_formula( encode_goal( group.constraint, h, 0, &w ) );
  wb.assert_formula( psi );
  std::map<GoalId, sat::Literal> goal_lits;
  for ( std::size_t i = 0; i < goal_parts.size(); ++i )
    goal_lits.emplace( *std::next( goals.begin(), static_cast<std::ptrdiff_t>( i ) ), wb.literal( goal_parts[i] ) );
  wb.assert_formula( Formula::mk_not( goal_conj ) );
  const auto wr = sat::solve( wb.problem() );
  if ( !wr.sat )
    throw Error( "get_justifications: " + joint.label() + " wins " + to_string( goals ) + " in group " + group.name() );

  ConflictCause cause;
  cause.group = g;
  cause.group_name = group.name();
  cause.checked = goals;
  cause.recombined = joint.label();
  cause.witness = decode_run( w, h, [&]( const std::string& n ) { return wb.has_var( n ) && wr.value( wb.var( n ) ); } );
  for ( const auto& [id, lit] : goal_lits )
  {
    if ( !wr.value( lit ) )
      cause.violated.insert( id );
  }
  std::vector<Formula> fixed{ psi };
  for ( std::size_t t = 0; t < h; ++t )
    fixed.push_back( Formula::var( action_var( Role::Env, cause.witness.actions[t][2], static_cast<int>( t ) ) ) );
  auto constraint = Formula::conj( fixed );

  // which group atoms are needed to rule out every goal-satisfying run
  const auto bodies = merged_bodies( at.info().evidences );
  sat::CnfBuilder jb;
  assert_world( jb, p, at.info().facts );
  jb.assert_formula( constraint );
  jb.assert_formula( goal_conj );
  for ( std::size_t i = 0; i < group.members.size(); ++i )
  {
    const sat::Literal sel{ jb.fresh(), true };
    jb.add_clause( { ~sel, jb.literal( encode_goal( bodies.at( group.members[i] ), h, 0, &w ) ) } );
    jb.add_assumption( static_cast<sat::AssumptionId>( i ), sel );
  }
  const auto jr = sat::solve( jb.problem() );
  if ( jr.sat )
  {
    // the witness depends on the unconstrained part of the initial state
    std::vector<Formula> init;
    for ( std::size_t i = 0; i < w.variables.size(); ++i )
    {
      const auto v = Formula::var( timed_name( w.variables[i], 0 ) );
      init.push_back( cause.witness.states[0][i] ? v : Formula::mk_not( v ) );
    }
    constraint = Formula::mk_and( constraint, Formula::conj( init ) );
  }
  else
  {
    std::set<sat::AssumptionId> all;
    for ( const auto& [id, _] : jb.problem().assumptions )
      all.insert( id );
    for ( const auto id : sat::minimize_core( jb.problem(), all ) )
      cause.core.push_back( group.members[id] );
  }
  cause.witness_constraint = constraint;

  if ( cause.core.empty() )
  {
    cause.core = { world_atom };
  }
  else
  {
    std::set<EntityId> degenerate( at.worlds().degenerate.begin(), at.worlds().degenerate.end() );
    std::vector<Formula> core_bodies;
    for ( const auto& e : cause.core )
      core_bodies.push_back( bodies.at( e ) );
    const auto core_conj = encode_goal( Formula::conj( core_bodies ), h, 0, &w );
    for ( const auto& [atom, body] : bodies )
    {
      if ( degenerate.count( atom ) ||
           std::find( group.members.begin(), group.members.end(), atom ) != group.members.end() )
        continue;
      sat::CnfBuilder cb;
      assert_world( cb, p, at.info().facts );
      cb.assert_formula( core_conj );
      cb.assert_formula( encode_goal( body, h, 0, &w ) );
      if ( !sat::solve( cb.problem() ).sat )
        cause.contested.push_back( atom );
    }
  }
  std::set<EntityId> atoms( cause.core.begin(), cause.core.end() );
  atoms.insert( cause.contested.begin(), cause.contested.end() );
  cause.atoms.assign( atoms.begin(), atoms.end() );
  return cause;
}

bool cause_is_sound(const Problem& p, const InformationBase& info, const ConflictCause& cause,
                    const std::vector<EntityId>& atoms)
{
  const auto& w = p.world;
  const auto bodies = merged_bodies( info.evidences );
  sat::CnfBuilder b;
  assert_world( b, p, info.facts );
  for ( const auto& a : atoms )
  {
    if ( a == world_atom )
      continue;
    b.assert_formula( encode_goal( bodies.at( a ), p.horizon, 0, &w ) );
  }
  b.assert_formula( cause.witness_constraint );
  for ( const auto& id : cause.checked )
  {
    const Goal* g = p.goals_a.find( id );
    if ( !g )
      g = p.peer.goals_b.find( id );
    if ( !g )
      throw Error( "cause refers to unknown goal '" + id + "'" );
    b.assert_formula( encode_goal( g->formula, p.horizon, 0, &w ) );
  }
  return !sat::solve( b.problem() ).sat;
}

bool refines(const Problem& p, const PossibleWorldSet& after, const PossibleWorldSet& before)
{
  for ( const auto& ng : after.groups )
  {
    bool found = false;
    for ( const auto& og : before.groups )
    {
      sat::CnfBuilder b;
      assert_world( b, p, {} );
      b.assert_formula( encode_goal( ng.constraint, p.horizon, 0, &p.world ) );
      b.assert_formula( Formula::mk_not( encode_goal( og.constraint, p.horizon, 0, &p.world ) ) );
      if ( !sat::solve( b.problem() ).sat )
      {
        found = true;
        break;
      }
    }
    if ( !found )
      return false;
  }
  return true;
}

namespace
{

TraceEvent event(std::string kind, int level, std::vector<std::pair<std::string, std::string>> fields)
{
  return TraceEvent{ std::move( kind ), 0, level, std::move( fields ) };
}

bool pairwise_consistent(const Problem& p, const std::vector<Formula>& facts, const Formula& x, const Formula& y)
{
  sat::CnfBuilder b;
  assert_world( b, p, facts );
  b.assert_formula( encode_goal( x, p.horizon, 0, &p.world ) );
  b.assert_formula( encode_goal( y, p.horizon, 0, &p.world ) );
  return sat::solve( b.problem() ).sat;
}

std::size_t trust_rank(const Problem& p, const EntityId& atom)
{
  const auto& t = p.peer.trust;
  return static_cast<std::size_t>( std::find( t.begin(), t.end(), atom ) - t.begin() );
}

void share_truths(const std::vector<ConflictCause>& causes, Attempt& at, FixResult& out)
{
  const auto& p = at.problem();
  for ( const auto& cause : causes )
  {
    const bool blame_world = cause.core == std::vector<EntityId>{ world_atom };
    std::set<std::string> vars;
    const auto bodies = merged_bodies( out.info.evidences );
    for ( const auto& a : cause.atoms )
    {
      if ( const auto it = bodies.find( a ); it != bodies.end() )
      {
        const auto v = variables_of( it->second );
        vars.insert( v.begin(), v.end() );
      }
    }
    for ( const auto& truth : p.peer.truths )
    {
      const auto known = [&]( const EntityId& id ) {
        return std::any_of( out.info.evidences.begin(), out.info.evidences.end(),
                            [&]( const Evidence& e ) { return e.atom == id; } ) ||
               std::find( out.info.discarded.begin(), out.info.discarded.end(), id ) != out.info.discarded.end();
      };
      if ( known( truth.atom ) )
        continue;
      const auto tv = variables_of( truth.body );
      const bool relevant =
          blame_world || std::any_of( tv.begin(), tv.end(), [&]( const std::string& v ) { return vars.count( v ) > 0; } );
      if ( !relevant )
        continue;

      std::vector<EntityId> clashing;
      bool outranked = false;
      for ( const auto& own : out.info.evidences )
      {
        if ( pairwise_consistent( p, out.info.facts, own.body, truth.body ) )
          continue;
        clashing.push_back( own.atom );
        outranked = outranked || trust_rank( p, own.atom ) < trust_rank( p, truth.atom );
      }
      if ( outranked )
      {
        out.info.discarded.push_back( truth.atom );
        out.events.push_back( event( "c1-reject", 1, { { "truth", truth.atom }, { "clashes", join( clashing ) } } ) );
        continue;
      }
      std::erase_if( out.info.evidences, [&]( const Evidence& e ) {
        return std::find( clashing.begin(), clashing.end(), e.atom ) != clashing.end();
      } );
      std::sort( clashing.begin(), clashing.end() );
      clashing.erase( std::unique( clashing.begin(), clashing.end() ), clashing.end() );
      out.info.discarded.insert( out.info.discarded.end(), clashing.begin(), clashing.end() );
      out.info.evidences.push_back( truth );
      out.changed = true;
      out.events.push_back( event( "c1-accept", 1,
                                   { { "truth", truth.atom },
                                     { "body", to_string( truth.body ) },
                                     { "discarded", join( clashing ) } } ) );
    }
  }
}

std::uint64_t combined_weight(const GoalState& gs, const PeerModel& peer, const GoalSet& s)
{
  if ( const auto it = peer.combined.find( s ); it != peer.combined.end() )
    return it->second;
  std::uint64_t sum = 0;
  for ( const auto& id : s )
  {
    const Goal* g = gs.a.find( id );
    if ( !g )
      g = gs.b.find( id );
    sum += g ? g->weight : 0;
  }
  return sum;
}

void negotiate(Attempt& at, FixResult& out)
{
  std::vector<GoalId> ids;
  for ( const auto& g : out.goals.a.goals )
    ids.push_back( g.id );
  for ( const auto& g : out.goals.b.goals )
  {
    if ( std::find( ids.begin(), ids.end(), g.id ) == ids.end() )
      ids.push_back( g.id );
  }
  std::sort( ids.begin(), ids.end() );
  if ( ids.size() > 20 )
    throw Error( "too many goals to negotiate" );

  std::vector<std::pair<std::uint64_t, GoalSet>> subsets;
  for ( std::uint64_t mask = 0; mask < ( 1ull << ids.size() ); ++mask )
  {
    GoalSet s;
    for ( std::size_t i = 0; i < ids.size(); ++i )
    {
      if ( mask >> i & 1u )
        s.insert( ids[i] );
    }
    subsets.emplace_back( combined_weight( out.goals, at.problem().peer, s ), std::move( s ) );
  }
  std::sort( subsets.begin(), subsets.end(), []( const auto& x, const auto& y ) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  } );

  for ( const auto& [weight, s] : subsets )
  {
    bool feasible = false;
    std::string witness;
    for ( std::size_t a = 0; a < at.strategies( Role::A ).size() && !feasible; ++a )
    {
      for ( const auto b : at.admissible_b() )
      {
        bool all = true;
        for ( std::size_t g = 0; g < at.worlds().groups.size() && all; ++g )
          all = subset( s, at.achieved( g, a, b ) );
        if ( all )
        {
          feasible = true;
          witness = at.joint( a, b ).label();
          break;
        }
      }
    }
    out.events.push_back( event( "c4-try", 4,
                                 { { "goals", to_string( s ) },
                                   { "weight", std::to_string( weight ) },
                                   { "feasible", feasible ? "yes" : "no" } } ) );
    if ( feasible )
    {
      out.goals.agreed = s;
      out.changed = true;
      out.events.push_back( event( "c4-agree", 4, { { "goals", to_string( s ) }, { "strategy", witness } } ) );
      return;
    }
  }
}

} // namespace

FixResult fix_conflict(const std::vector<ConflictCause>& causes, int level, Attempt& at)
{
  if ( level < 1 || level > 4 )
    throw Error( "resolution level must be in 1..4" );
  FixResult out{ at.info(), at.goals(), false, {} };
  if ( causes.empty() )
    return out;
  const auto& peer = at.problem().peer;
  switch ( level )
  {
  case 1: share_truths( causes, at, out ); break;
  case 2:
    for ( const auto& c : peer.commitments )
    {
      if ( std::find( out.info.commitments.begin(), out.info.commitments.end(), c ) != out.info.commitments.end() )
        continue;
      out.info.commitments.push_back( c );
      out.changed = true;
      out.events.push_back( event( "c2-commit", 2,
                                   { { "step", c.step ? std::to_string( *c.step ) : "*" },
                                     { "constraint", to_string( c.constraint ) } } ) );
    }
    break;
  case 3:
    if ( !peer.adoptable )
      break;
    for ( const auto& g : out.goals.a.goals )
    {
      if ( out.goals.b.find( g.id ) )
        continue;
      out.goals.b.goals.push_back( g );
      out.changed = true;
      out.events.push_back( event( "c3-adopt", 3, { { "goal", g.id }, { "weight", std::to_string( g.weight ) } } ) );
    }
    break;
  case 4:
    if ( !out.goals.agreed )
      negotiate( at, out );
    break;
  }
  return out;
}

namespace
{

struct Outcome
{
  std::vector<std::pair<JointStrategy, GoalSet>> winning;
  int level = 0;
  std::optional<GoalSet> agreed;
  InformationBase info;
};

class Search
{
public:
  Search(const Problem& p, AnalysisResult& result) : _p( p ), _result( result ) {}

  Outcome run(const InformationBase& info, const GoalState& goals, int depth)
  {
    Attempt at( _p, info, goals );
    const auto& groups = at.worlds().groups;
    std::vector<std::string> names;
    for ( const auto& g : groups )
      names.push_back( g.name() );
    emit( depth, 0, "worlds", { { "groups", join( names, " " ) }, { "degenerate", join( at.worlds().degenerate ) } } );
    emit( depth, 0, "strategies",
          { { "a", std::to_string( at.strategies( Role::A ).size() ) },
            { "b", std::to_string( at.strategies( Role::B ).size() ) },
            { "b_admissible", std::to_string( at.admissible_b().size() ) } } );
    if ( depth == 0 )
      _result.worlds = at.worlds();

    if ( goals.agreed )
    {
      emit( depth, 0, "goals", { { "agreed", to_string( *goals.agreed ) } } );
    }
    else
    {
      std::vector<std::pair<std::string, std::string>> fields;
      std::vector<std::string> max_a;
      for ( const auto& s : goals_a_max( at ) )
        max_a.push_back( to_string( s ) );
      fields.emplace_back( "phi_a_max", join( max_a, " " ) );
      for ( std::size_t g = 0; g < groups.size(); ++g )
      {
        std::vector<std::string> max_b;
        for ( const auto& s : goals_b_max( at, g ) )
          max_b.push_back( to_string( s ) );
        fields.emplace_back( "phi_b_max" + groups[g].name(), join( max_b, " " ) );
      }
      emit( depth, 0, "goals", std::move( fields ) );
    }

    const auto cands = strat_a( at );
    emit( depth, 0, "candidates", { { "count", std::to_string( cands.size() ) } } );

    Outcome out;
    out.info = info;
    out.agreed = goals.agreed;
    std::vector<ConflictCause> causes;
    for ( const auto& c : cands )
    {
      const auto label = at.joint( c.a, c.b ).label();
      for ( std::size_t g = 0; g < groups.size(); ++g )
      {
        if ( at.vacuous( g, c.a, c.b ) )
          emit( depth, 0, "vacuous", { { "strategy", label }, { "group", groups[g].name() } } );
      }
      auto cause = test_if_not_winning( at, c );
      if ( !cause )
      {
        emit( depth, 0, "verdict", { { "strategy", label }, { "phi_a", to_string( c.phi_a ) }, { "result", "winning" } } );
        out.winning.emplace_back( at.joint( c.a, c.b ), c.phi_a );
        continue;
      }
      emit( depth, 0, "verdict", { { "strategy", label }, { "phi_a", to_string( c.phi_a ) }, { "result", "conflict" } } );
      emit( depth, 0, "cause",
            { { "group", cause->group_name },
              { "against", cause->recombined },
              { "checked", to_string( cause->checked ) },
              { "violated", to_string( cause->violated ) },
              { "core", join( cause->core ) },
              { "contested", join( cause->contested ) },
              { "witness", render_run( _p.world, cause->witness ) } } );
      causes.push_back( std::move( *cause ) );
    }
    if ( depth == 0 )
    {
      _result.conflict = out.winning.empty();
      _result.causes = causes;
    }
    if ( !out.winning.empty() )
      return out;

    emit( depth, 0, "conflict", { { "causes", std::to_string( causes.size() ) } } );
    for ( int level = 1; level <= _p.max_level; ++level )
    {
      auto fix = fix_conflict( causes, level, at );
      for ( auto& e : fix.events )
      {
        e.depth = depth;
        _result.trace.push_back( std::move( e ) );
      }
      emit( depth, level, "resolve", { { "changed", fix.changed ? "yes" : "no" } } );
      if ( !fix.changed )
        continue;
      if ( level <= 2 )
      {
        const auto next = max_consistent_sets( fix.info.evidences, fix.info.facts, _p.world, _p.horizon );
        const bool ok = refines( _p, next, at.worlds() );
        _result.refinements.push_back( { level, depth, ok } );
        emit( depth, level, "refinement", { { "ok", ok ? "yes" : "no" } } );
      }
      auto sub = run( fix.info, fix.goals, depth + 1 );
      if ( !sub.winning.empty() )
      {
        sub.level = std::max( sub.level, level );
        return sub;
      }
    }
    return out;
  }

private:
  void emit(int depth, int level, std::string kind, std::vector<std::pair<std::string, std::string>> fields)
  {
    _result.trace.push_back( TraceEvent{ std::move( kind ), depth, level, std::move( fields ) } );
  }

  const Problem& _p;
  AnalysisResult& _result;
};

} // namespace

AnalysisResult find_strategy(const Problem& p)
{
  if ( p.max_level < 0 || p.max_level > 4 )
    throw Error( "max level must be in 0..4" );
  p.world.validate();
  AnalysisResult result;
  Search search( p, result );
  InformationBase info{ p.evidences, p.facts, {}, {} };
  GoalState goals{ p.goals_a, p.peer.goals_b, std::nullopt };
  auto out = search.run( info, goals, 0 );
  result.resolved = !out.winning.empty();
  result.level = result.resolved ? out.level : p.max_level;
  result.winning = std::move( out.winning );
  result.agreed = out.agreed;
  result.final_info = std::move( out.info );
  std::vector<std::string> labels;
  for ( const auto& [j, _] : result.winning )
    labels.push_back( j.label() );
  result.trace.push_back( TraceEvent{ "result",
                                      0,
                                      result.level,
                                      { { "resolved", result.resolved ? "yes" : "no" },
                                        { "conflict", result.conflict ? "yes" : "no" },
                                        { "strategies", join( labels, " " ) } } } );
  return result;
}

} // namespace confres
