#include "confres/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace confres
{

namespace
{

constexpr unsigned max_horizon = 16;

struct Where
{
  int line = 0;
  int column = 0;
};

Where at(const Token& t) { return { t.line, t.column }; }

enum class Section
{
  Header,
  Variables,
  Actions,
  Observe,
  Init,
  Current,
  Rules,
  Evidence,
  Facts,
  Goals,
  Weights,
  Trust,
  Peer,
};

std::optional<Role> role_of(const std::string& s)
{
  if ( s == "A" )
    return Role::A;
  if ( s == "B" )
    return Role::B;
  if ( s == "Env" )
    return Role::Env;
  return std::nullopt;
}

class Parser
{
public:
  ScenarioParse run(std::string_view text)
  {
    int line_no = 0;
    std::size_t start = 0;
    while ( start <= text.size() )
    {
      const auto end = text.find( '\n', start );
      const auto line = text.substr( start, end == std::string_view::npos ? std::string_view::npos : end - start );
      ++line_no;
      _tokens = tokenize_line( line, line_no );
      _pos = 0;
      line_entry();
      if ( end == std::string_view::npos )
        break;
      start = end + 1;
    }
    validate();
    std::stable_sort( _diags.begin(), _diags.end(), []( const Diagnostic& a, const Diagnostic& b ) {
      return std::tie( a.line, a.column ) < std::tie( b.line, b.column );
    } );
    ScenarioParse out;
    out.diagnostics = std::move( _diags );
    if ( out.diagnostics.empty() )
      out.doc = std::move( _doc );
    return out;
  }

private:
  // -- token helpers ------------------------------------------------------
  const Token& peek() const { return _tokens[std::min( _pos, _tokens.size() - 1 )]; }
  const Token& advance()
  {
    const auto& t = peek();
    if ( _pos < _tokens.size() - 1 )
      ++_pos;
    return t;
  }
  bool accept(Tok k)
  {
    if ( peek().kind != k )
      return false;
    advance();
    return true;
  }
  bool at_end() const { return peek().kind == Tok::End || peek().kind == Tok::Remark; }

  void error(Where w, std::string msg) { _diags.push_back( { w.line, w.column, std::move( msg ) } ); }
  void error(const Token& t, std::string msg) { error( at( t ), std::move( msg ) ); }

  bool expect(Tok k, const char* what)
  {
    if ( accept( k ) )
      return true;
    error( peek(), std::string( "expected " ) + what );
    return false;
  }

  std::optional<std::string> ident(const char* what)
  {
    if ( peek().kind != Tok::Ident )
    {
      error( peek(), std::string( "expected " ) + what );
      return std::nullopt;
    }
    return advance().text;
  }

  std::optional<std::uint64_t> number(const char* what)
  {
    const auto& t = peek();
    std::uint64_t v = 0;
    if ( t.kind != Tok::Number ||
         std::from_chars( t.text.data(), t.text.data() + t.text.size(), v ).ec != std::errc() )
    {
      error( t, std::string( "expected " ) + what );
      return std::nullopt;
    }
    advance();
    return v;
  }

  std::optional<Formula> formula()
  {
    FormulaParser fp( std::span<const Token>( _tokens ), _pos );
    auto f = fp.parse();
    _pos = fp.position();
    if ( !f )
    {
      for ( const auto& d : fp.diagnostics() )
        _diags.push_back( d );
      return std::nullopt;
    }
    return f;
  }

  bool finish(bool allow_remark = true)
  {
    if ( peek().kind == Tok::End || ( allow_remark && peek().kind == Tok::Remark ) )
      return true;
    error( peek(), "unexpected '" + peek().text + "'" );
    return false;
  }

  std::string remark() const { return peek().kind == Tok::Remark ? peek().text : std::string(); }

  std::optional<Role> role(const char* what)
  {
    const auto& t = peek();
    const auto r = t.kind == Tok::Ident ? role_of( t.text ) : std::nullopt;
    if ( !r )
    {
      error( t, std::string( "expected " ) + what );
      return std::nullopt;
    }
    advance();
    return r;
  }

  /// `A.col`
  std::optional<GoalId> goal_id()
  {
    const auto r = role( "goal owner A or B" );
    if ( !r )
      return std::nullopt;
    if ( *r == Role::Env )
    {
      error( peek(), "goals belong to A or B" );
      return std::nullopt;
    }
    if ( !expect( Tok::Dot, "'.' after goal owner" ) )
      return std::nullopt;
    const auto name = ident( "goal name" );
    if ( !name )
      return std::nullopt;
    return to_string( *r ) + "." + *name;
  }

  // -- lines --------------------------------------------------------------
  void line_entry()
  {
    if ( peek().kind == Tok::End )
      return;
    for ( const auto& t : _tokens )
    {
      if ( t.kind == Tok::Invalid )
      {
        error( t, "unexpected character '" + t.text + "'" );
        return;
      }
    }
    if ( peek().kind == Tok::Remark )
      return;
    if ( peek().kind == Tok::LBracket )
    {
      section_header();
      return;
    }
    switch ( _section )
    {
    case Section::Header: header_line(); break;
    case Section::Variables: name_list( _doc.variables, _var_at ); break;
    case Section::Actions: name_list( _doc.actions[_role], _action_at[_role] ); break;
    case Section::Observe: name_list( _doc.observe[_role], _observe_at[_role] ); break;
    case Section::Init: formula_line( _doc.init, _init_at ); break;
    case Section::Current: formula_line( _doc.current, _current_at ); break;
    case Section::Facts: formula_line( _doc.facts, _fact_at ); break;
    case Section::Rules: rule_line(); break;
    case Section::Evidence: evidence_line( _doc.evidence, _evidence_at ); break;
    case Section::Goals: goal_line(); break;
    case Section::Weights: weight_line(); break;
    case Section::Trust: trust_line(); break;
    case Section::Peer: peer_line(); break;
    }
  }

  void section_header()
  {
    advance();
    const auto& name_tok = peek();
    const auto name = ident( "section name" );
    if ( !name )
      return;
    std::optional<std::string> arg;
    if ( peek().kind == Tok::Ident )
      arg = advance().text;
    if ( !expect( Tok::RBracket, "']'" ) || !finish() )
      return;

    static const std::map<std::string, Section> plain{
        { "variables", Section::Variables }, { "init", Section::Init },       { "current", Section::Current },
        { "rules", Section::Rules },         { "evidence", Section::Evidence }, { "facts", Section::Facts },
        { "goals", Section::Goals },         { "trust", Section::Trust },     { "peer", Section::Peer } };
    if ( const auto it = plain.find( *name ); it != plain.end() )
    {
      if ( arg )
        error( name_tok, "section [" + *name + "] takes no argument" );
      _section = it->second;
      return;
    }
    if ( *name == "actions" || *name == "observe" )
    {
      const auto r = arg ? role_of( *arg ) : std::nullopt;
      if ( !r || ( *name == "observe" && *r == Role::Env ) )
      {
        error( name_tok, "section [" + *name + "] needs a role" + ( *name == "observe" ? " A or B" : " A, B or Env" ) );
        _section = Section::Header;
        _skip = true;
        return;
      }
      _section = *name == "actions" ? Section::Actions : Section::Observe;
      _role = *r;
      _skip = false;
      return;
    }
    if ( *name == "weights" )
    {
      if ( arg && ( *arg == "A" || *arg == "B" || *arg == "combined" ) )
      {
        _section = Section::Weights;
        _combined = *arg == "combined";
        _role = *arg == "B" ? Role::B : Role::A;
        return;
      }
      error( name_tok, "section [weights] needs A, B or combined" );
    }
    else
    {
      error( name_tok, "unknown section '" + *name + "'" );
    }
    _section = Section::Header;
    _skip = true;
  }

  void header_line()
  {
    if ( _skip )
      return;
    const auto& key_tok = peek();
    const auto key = ident( "'key: value' or a [section]" );
    if ( !key || !expect( Tok::Colon, "':'" ) )
      return;
    if ( !_header_seen.insert( *key ).second )
    {
      error( key_tok, "duplicate key '" + *key + "'" );
      return;
    }
    if ( *key == "scenario" )
    {
      if ( const auto v = ident( "scenario name" ) )
        _doc.name = *v;
    }
    else if ( *key == "horizon" )
    {
      const auto& t = peek();
      if ( const auto v = number( "horizon" ) )
      {
        if ( *v > max_horizon )
          error( t, "horizon must be at most " + std::to_string( max_horizon ) );
        else
          _doc.horizon = static_cast<unsigned>( *v );
      }
    }
    else if ( *key == "mode" )
    {
      const auto& t = peek();
      if ( const auto v = ident( "sequence or reactive" ) )
      {
        if ( *v == "sequence" )
          _doc.mode = StrategyMode::Sequence;
        else if ( *v == "reactive" )
          _doc.mode = StrategyMode::Reactive;
        else
          error( t, "mode must be sequence or reactive" );
      }
    }
    else if ( *key == "max_level" )
    {
      const auto& t = peek();
      if ( const auto v = number( "level 0..4" ) )
      {
        if ( *v > 4 )
          error( t, "max_level must be in 0..4" );
        else
          _doc.max_level = static_cast<int>( *v );
      }
    }
    else if ( *key == "budget" )
    {
      const auto& t = peek();
      if ( const auto v = number( "budget" ) )
      {
        if ( *v == 0 )
          error( t, "budget must be positive" );
        else
          _doc.budget = *v;
      }
    }
    else
    {
      error( key_tok, "unknown key '" + *key + "'" );
      return;
    }
    finish();
  }

  void name_list(std::vector<std::string>& out, std::vector<Where>& where)
  {
    if ( _skip )
      return;
    while ( !at_end() )
    {
      const auto& t = peek();
      const auto name = ident( "name" );
      if ( !name )
        return;
      out.push_back( *name );
      where.push_back( at( t ) );
      accept( Tok::Comma );
    }
    finish();
  }

  void formula_line(std::vector<Formula>& out, std::vector<Where>& where)
  {
    const auto w = at( peek() );
    const auto f = formula();
    if ( !f || !finish() )
      return;
    out.push_back( *f );
    where.push_back( w );
  }

  void rule_line()
  {
    const auto w = at( peek() );
    if ( peek().kind != Tok::Ident || peek().text != "on" )
    {
      error( peek(), "expected 'on <role>.<action>'" );
      return;
    }
    advance();
    ActionRule rule;
    const auto r = role( "role A, B or Env" );
    if ( !r || !expect( Tok::Dot, "'.'" ) )
      return;
    rule.role = *r;
    const auto action = ident( "action name" );
    if ( !action )
      return;
    rule.action = *action;
    if ( peek().kind == Tok::Ident && peek().text == "if" )
    {
      advance();
      const auto g = formula();
      if ( !g )
        return;
      rule.guard = *g;
    }
    if ( !expect( Tok::FatArrow, "'=>'" ) )
      return;
    std::vector<Where> effect_at;
    do
    {
      effect_at.push_back( at( peek() ) );
      const auto v = ident( "assigned variable" );
      if ( !v || !expect( Tok::Assign, "':='" ) )
        return;
      const auto e = formula();
      if ( !e )
        return;
      rule.effects.emplace_back( *v, *e );
    } while ( accept( Tok::Semicolon ) && !at_end() );
    if ( !finish() )
      return;
    _doc.rules.push_back( std::move( rule ) );
    _rule_at.push_back( w );
    _effect_at.push_back( std::move( effect_at ) );
  }

  void evidence_line(std::vector<Evidence>& out, std::vector<Where>& where)
  {
    const auto w = at( peek() );
    const auto atom = ident( "belief atom" );
    if ( !atom || !expect( Tok::Colon, "':' after belief atom" ) )
      return;
    const auto f = formula();
    if ( !f || !finish() )
      return;
    out.push_back( { *atom, *f, remark() } );
    where.push_back( w );
  }

  void goal_line()
  {
    const auto w = at( peek() );
    const auto id = goal_id();
    if ( !id )
      return;
    const auto weight = number( "goal weight" );
    if ( !weight || !expect( Tok::Colon, "':'" ) )
      return;
    const auto f = formula();
    if ( !f || !finish() )
      return;
    _doc.goals.push_back( { *id, id->front() == 'A' ? Role::A : Role::B, *f, *weight } );
    _goal_at.push_back( w );
  }

  void weight_line()
  {
    const auto w = at( peek() );
    if ( !expect( Tok::LBrace, "'{'" ) )
      return;
    GoalSet set;
    if ( peek().kind != Tok::RBrace )
    {
      do
      {
        const auto id = goal_id();
        if ( !id )
          return;
        set.insert( *id );
      } while ( accept( Tok::Comma ) );
    }
    if ( !expect( Tok::RBrace, "'}'" ) || !expect( Tok::Eq, "'='" ) )
      return;
    const auto value = number( "weight" );
    if ( !value || !finish() )
      return;
    auto& table = _combined ? _doc.combined : _doc.weights[_role];
    if ( set.empty() )
    {
      error( w, "the empty goal set always weighs 0" );
      return;
    }
    if ( !table.emplace( set, *value ).second )
    {
      error( w, "weight for " + to_string( set ) + " given twice" );
      return;
    }
    _weight_at.push_back( { w, _combined, _role, set } );
  }

  void trust_line()
  {
    const auto w = at( peek() );
    if ( _trust_at )
    {
      error( w, "trust order given twice" );
      return;
    }
    std::vector<EntityId> order;
    do
    {
      const auto id = ident( "belief atom" );
      if ( !id )
        return;
      order.push_back( *id );
    } while ( accept( Tok::Gt ) );
    if ( !finish() )
      return;
    _doc.trust = std::move( order );
    _trust_at = w;
  }

  void peer_line()
  {
    const auto& kw = peek();
    const auto key = ident( "truth, commit or adoptable" );
    if ( !key )
      return;
    if ( *key == "truth" )
    {
      evidence_line( _doc.truths, _truth_at );
    }
    else if ( *key == "commit" )
    {
      Commitment c;
      if ( !accept( Tok::Star ) )
      {
        const auto& t = peek();
        const auto step = number( "step or '*'" );
        if ( !step )
          return;
        if ( *step > max_horizon )
        {
          error( t, "commitment step out of range" );
          return;
        }
        c.step = static_cast<unsigned>( *step );
      }
      if ( !expect( Tok::Colon, "':'" ) )
        return;
      const auto f = formula();
      if ( !f || !finish() )
        return;
      c.constraint = *f;
      _doc.commitments.push_back( std::move( c ) );
      _commit_at.push_back( at( kw ) );
    }
    else if ( *key == "adoptable" )
    {
      if ( !expect( Tok::Colon, "':'" ) )
        return;
      const auto& t = peek();
      const auto v = ident( "yes or no" );
      if ( !v )
        return;
      if ( *v != "yes" && *v != "no" )
      {
        error( t, "adoptable must be yes or no" );
        return;
      }
      if ( _adoptable_seen )
      {
        error( kw, "adoptable given twice" );
        return;
      }
      _adoptable_seen = true;
      _doc.adoptable = *v == "yes";
      finish();
    }
    else
    {
      error( kw, "unknown peer entry '" + *key + "'" );
    }
  }

  // -- semantic checks ----------------------------------------------------
  void check_name(const std::string& n, Where w, const char* what)
  {
    if ( is_reserved_word( n ) || n == "on" || n == "if" )
      error( w, std::string( what ) + " '" + n + "' is a reserved word" );
  }

  void check_formula(const Formula& f, Where w, bool allow_actions, bool allow_temporal, const char* what)
  {
    if ( contains_belief( f ) )
      error( w, std::string( what ) + " may not contain a belief operator" );
    if ( !allow_temporal && contains_temporal( f ) )
      error( w, std::string( what ) + " must be propositional" );
    for ( const auto& v : variables_of( f ) )
    {
      if ( _vars.count( v ) )
        continue;
      if ( allow_actions && _owner.count( v ) )
        continue;
      error( w, std::string( what ) + " uses undeclared name '" + v + "'" );
    }
  }

  void validate()
  {
    for ( std::size_t i = 0; i < _doc.variables.size(); ++i )
    {
      const auto& v = _doc.variables[i];
      check_name( v, _var_at[i], "variable" );
      if ( !_vars.insert( v ).second )
        error( _var_at[i], "variable '" + v + "' declared twice" );
    }
    if ( _doc.variables.empty() )
      error( Where{ 1, 1 }, "no [variables] declared" );
    for ( const auto r : all_roles )
    {
      const auto& names = _doc.actions[r];
      if ( names.empty() && r != Role::Env )
        error( Where{ 1, 1 }, "no [actions " + to_string( r ) + "] declared" );
      for ( std::size_t i = 0; i < names.size(); ++i )
      {
        const auto& a = names[i];
        const auto w = _action_at[r][i];
        check_name( a, w, "action" );
        if ( _vars.count( a ) )
          error( w, "action '" + a + "' has the name of a variable" );
        const auto [it, inserted] = _owner.emplace( a, r );
        if ( !inserted )
        {
          if ( it->second == r )
            error( w, "action '" + a + "' declared twice" );
          else
            error( w, "action '" + a + "' belongs to both " + to_string( it->second ) + " and " + to_string( r ) +
                          "; the action alphabets of the agents must be disjoint" );
        }
      }
    }
    if ( _doc.actions[Role::Env].empty() )
      _doc.actions.erase( Role::Env );
    for ( const auto r : { Role::A, Role::B } )
    {
      if ( _doc.actions[r].empty() )
        _doc.actions.erase( r );
    }
    for ( auto& [r, names] : _doc.observe )
    {
      for ( std::size_t i = 0; i < names.size(); ++i )
      {
        if ( !_vars.count( names[i] ) )
          error( _observe_at[r][i], "observed name '" + names[i] + "' is not a variable" );
      }
    }
    for ( std::size_t i = 0; i < _doc.init.size(); ++i )
      check_formula( _doc.init[i], _init_at[i], false, false, "init" );
    for ( std::size_t i = 0; i < _doc.current.size(); ++i )
      check_formula( _doc.current[i], _current_at[i], false, false, "current" );
    for ( std::size_t i = 0; i < _doc.rules.size(); ++i )
    {
      const auto& rule = _doc.rules[i];
      const auto it = _owner.find( rule.action );
      if ( it == _owner.end() || it->second != rule.role )
        error( _rule_at[i], "'" + rule.action + "' is not an action of " + to_string( rule.role ) );
      check_formula( rule.guard, _rule_at[i], true, false, "guard" );
      for ( std::size_t k = 0; k < rule.effects.size(); ++k )
      {
        const auto& [v, e] = rule.effects[k];
        if ( !_vars.count( v ) )
          error( _effect_at[i][k], "assignment to undeclared variable '" + v + "'" );
        check_formula( e, _effect_at[i][k], true, false, "effect" );
      }
    }

    std::set<EntityId> atoms;
    auto check_atoms = [&]( const std::vector<Evidence>& list, const std::vector<Where>& where, const char* what ) {
      for ( std::size_t i = 0; i < list.size(); ++i )
      {
        const auto& e = list[i];
        check_name( e.atom, where[i], what );
        if ( e.atom == world_atom )
          error( where[i], "'world' is reserved for evidence-independent conflicts" );
        if ( _vars.count( e.atom ) || _owner.count( e.atom ) )
          error( where[i], std::string( what ) + " '" + e.atom + "' clashes with a variable or action" );
        if ( !atoms.insert( e.atom ).second )
          error( where[i], "belief atom '" + e.atom + "' declared twice" );
        check_formula( e.body, where[i], false, true, what );
      }
    };
    check_atoms( _doc.evidence, _evidence_at, "evidence" );
    check_atoms( _doc.truths, _truth_at, "peer truth" );
    for ( std::size_t i = 0; i < _doc.facts.size(); ++i )
      check_formula( _doc.facts[i], _fact_at[i], false, true, "fact" );

    std::set<GoalId> goal_ids;
    for ( std::size_t i = 0; i < _doc.goals.size(); ++i )
    {
      const auto& g = _doc.goals[i];
      if ( !goal_ids.insert( g.id ).second )
        error( _goal_at[i], "goal '" + g.id + "' declared twice" );
      check_formula( g.formula, _goal_at[i], true, true, "goal" );
    }
    for ( const auto& [w, combined, r, set] : _weight_at )
    {
      for ( const auto& id : set )
      {
        if ( !goal_ids.count( id ) )
          error( w, "weight table mentions undeclared goal '" + id + "'" );
        else if ( !combined && id.substr( 0, 2 ) != to_string( r ) + "." )
          error( w, "goal '" + id + "' is not a goal of " + to_string( r ) );
      }
    }
    if ( !_doc.goals.empty() && std::none_of( _doc.goals.begin(), _doc.goals.end(),
                                              []( const Goal& g ) { return g.owner == Role::A; } ) )
      error( _goal_at[0], "A has no goals" );

    if ( _trust_at )
    {
      std::set<EntityId> seen;
      for ( const auto& a : _doc.trust )
      {
        if ( !atoms.count( a ) )
          error( *_trust_at, "trust order names unknown belief atom '" + a + "'" );
        if ( !seen.insert( a ).second )
          error( *_trust_at, "trust order lists '" + a + "' twice" );
      }
      for ( const auto& a : atoms )
      {
        if ( !seen.count( a ) )
          error( *_trust_at, "trust order is not total: '" + a + "' is missing" );
      }
    }
    else if ( atoms.size() >= 2 )
    {
      error( Where{ 1, 1 }, "a [trust] order over all belief atoms is required" );
    }

    for ( std::size_t i = 0; i < _doc.commitments.size(); ++i )
    {
      const auto& c = _doc.commitments[i];
      if ( c.step && *c.step >= std::max( _doc.horizon, 1u ) )
        error( _commit_at[i], "commitment step beyond the horizon" );
      if ( contains_belief( c.constraint ) || contains_temporal( c.constraint ) )
        error( _commit_at[i], "commitment must be propositional" );
      for ( const auto& v : variables_of( c.constraint ) )
      {
        const auto it = _owner.find( v );
        if ( it == _owner.end() || it->second != Role::B )
          error( _commit_at[i], "commitment may only mention actions of B, not '" + v + "'" );
      }
    }
  }

  std::vector<Token> _tokens;
  std::size_t _pos = 0;
  std::vector<Diagnostic> _diags;
  ScenarioDoc _doc;
  Section _section = Section::Header;
  Role _role = Role::A;
  bool _combined = false;
  bool _skip = false;
  bool _adoptable_seen = false;
  std::set<std::string> _header_seen;

  std::vector<Where> _var_at;
  std::map<Role, std::vector<Where>> _action_at;
  std::map<Role, std::vector<Where>> _observe_at;
  std::vector<Where> _init_at, _current_at, _fact_at, _rule_at, _evidence_at, _goal_at, _truth_at, _commit_at;
  std::vector<std::vector<Where>> _effect_at;
  std::vector<std::tuple<Where, bool, Role, GoalSet>> _weight_at;
  std::optional<Where> _trust_at;

  std::set<std::string> _vars;
  std::map<std::string, Role> _owner;
};

void write_names(std::ostream& os, const std::vector<std::string>& names)
{
  for ( std::size_t i = 0; i < names.size(); ++i )
    os << ( i ? " " : "" ) << names[i];
  os << '\n';
}

void write_evidence(std::ostream& os, const Evidence& e)
{
  os << e.atom << ": " << to_string( e.body );
  if ( !e.provenance.empty() )
    os << " -- " << e.provenance;
  os << '\n';
}

void write_table(std::ostream& os, const std::map<GoalSet, std::uint64_t>& table)
{
  for ( const auto& [set, w] : table )
    os << to_string( set ) << " = " << w << '\n';
}

} // namespace

ScenarioParse parse_scenario(std::string_view text) { return Parser().run( text ); }

std::string render_scenario(const ScenarioDoc& doc)
{
  std::ostringstream os;
  if ( !doc.name.empty() )
    os << "scenario: " << doc.name << '\n';
  os << "horizon: " << doc.horizon << '\n';
  os << "mode: " << to_string( doc.mode ) << '\n';
  os << "max_level: " << doc.max_level << '\n';
  os << "budget: " << doc.budget << '\n';
  os << "\n[variables]\n";
  write_names( os, doc.variables );
  for ( const auto& [r, names] : doc.actions )
  {
    os << "\n[actions " << to_string( r ) << "]\n";
    write_names( os, names );
  }
  for ( const auto& [r, names] : doc.observe )
  {
    os << "\n[observe " << to_string( r ) << "]\n";
    write_names( os, names );
  }
  auto formulas = [&]( const char* section, const std::vector<Formula>& fs ) {
    if ( fs.empty() )
      return;
    os << "\n[" << section << "]\n";
    for ( const auto& f : fs )
      os << to_string( f ) << '\n';
  };
  formulas( "init", doc.init );
  formulas( "current", doc.current );
  if ( !doc.rules.empty() )
  {
    os << "\n[rules]\n";
    for ( const auto& r : doc.rules )
    {
      os << "on " << to_string( r.role ) << '.' << r.action;
      if ( !r.guard.is_top() )
        os << " if " << to_string( r.guard );
      os << " =>";
      for ( std::size_t i = 0; i < r.effects.size(); ++i )
        os << ( i ? "; " : " " ) << r.effects[i].first << " := " << to_string( r.effects[i].second );
      os << '\n';
    }
  }
  if ( !doc.evidence.empty() )
  {
    os << "\n[evidence]\n";
    for ( const auto& e : doc.evidence )
      write_evidence( os, e );
  }
  formulas( "facts", doc.facts );
  if ( !doc.goals.empty() )
  {
    os << "\n[goals]\n";
    for ( const auto& g : doc.goals )
      os << g.id << ' ' << g.weight << ": " << to_string( g.formula ) << '\n';
  }
  for ( const auto& [r, table] : doc.weights )
  {
    if ( table.empty() )
      continue;
    os << "\n[weights " << to_string( r ) << "]\n";
    write_table( os, table );
  }
  if ( !doc.combined.empty() )
  {
    os << "\n[weights combined]\n";
    write_table( os, doc.combined );
  }
  if ( !doc.trust.empty() )
  {
    os << "\n[trust]\n";
    for ( std::size_t i = 0; i < doc.trust.size(); ++i )
      os << ( i ? " > " : "" ) << doc.trust[i];
    os << '\n';
  }
  if ( !doc.truths.empty() || !doc.commitments.empty() || doc.adoptable )
  {
    os << "\n[peer]\n";
    for ( const auto& t : doc.truths )
    {
      os << "truth ";
      write_evidence( os, t );
    }
    for ( const auto& c : doc.commitments )
      os << "commit " << ( c.step ? std::to_string( *c.step ) : "*" ) << ": " << to_string( c.constraint ) << '\n';
    if ( doc.adoptable )
      os << "adoptable: yes\n";
  }
  return os.str();
}

Problem to_problem(const ScenarioDoc& doc)
{
  Problem p;
  p.horizon = doc.horizon;
  p.mode = doc.mode;
  p.budget = doc.budget;
  p.max_level = doc.max_level;
  p.world.variables = doc.variables;
  p.world.init = Formula::conj( doc.init );
  p.world.current = Formula::conj( doc.current );
  p.world.alphabets = doc.actions;
  if ( p.world.alphabets[Role::Env].empty() )
    p.world.alphabets[Role::Env] = { "idle" };
  p.world.observed = doc.observe;
  p.world.rules = doc.rules;
  p.evidences = doc.evidence;
  p.facts = doc.facts;
  for ( const auto& g : doc.goals )
    ( g.owner == Role::A ? p.goals_a : p.peer.goals_b ).goals.push_back( g );
  if ( const auto it = doc.weights.find( Role::A ); it != doc.weights.end() )
    p.goals_a.table = it->second;
  if ( const auto it = doc.weights.find( Role::B ); it != doc.weights.end() )
    p.peer.goals_b.table = it->second;
  p.peer.combined = doc.combined;
  p.peer.trust = doc.trust;
  p.peer.truths = doc.truths;
  p.peer.commitments = doc.commitments;
  p.peer.adoptable = doc.adoptable;
  return p;
}

} // namespace confres
