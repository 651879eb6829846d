#include "confres/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace confres
{

namespace detail
{
struct Node
{
  Op op;
  std::string name;
  EntityGroup group;
  Formula lhs;
  Formula rhs;
  std::size_t hash;
};
} // namespace detail

namespace
{

std::size_t combine(std::size_t seed, std::size_t v)
{
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool has_lhs(Op op)
{
  switch ( op )
  {
  case Op::Bottom:
  case Op::Top:
  case Op::Var:
    return false;
  default:
    return true;
  }
}

} // namespace

bool is_core(Op op)
{
  switch ( op )
  {
  case Op::Bottom:
  case Op::Var:
  case Op::Implies:
  case Op::Belief:
  case Op::Next:
  case Op::Prev:
  case Op::Until:
  case Op::Since:
    return true;
  default:
    return false;
  }
}

bool is_temporal(Op op)
{
  switch ( op )
  {
  case Op::Next:
  case Op::Prev:
  case Op::Until:
  case Op::Since:
  case Op::Globally:
  case Op::Finally:
  case Op::Historically:
    return true;
  default:
    return false;
  }
}

bool is_binary(Op op)
{
  switch ( op )
  {
  case Op::Implies:
  case Op::Until:
  case Op::Since:
  case Op::And:
  case Op::Or:
  case Op::Iff:
    return true;
  default:
    return false;
  }
}

const std::shared_ptr<const detail::Node>& Formula::bottom_node()
{
  static const std::shared_ptr<const detail::Node> node = std::make_shared<const detail::Node>( detail::Node{
      Op::Bottom, {}, {}, Formula( nullptr ), Formula( nullptr ), combine( 0, static_cast<std::size_t>( Op::Bottom ) ) } );
  return node;
}

// A default-constructed Formula is Bottom. The bottom node's own children are
// null so that constructing it does not recurse.
Formula::Formula() : _node( bottom_node() ) {}

Formula::Formula(std::shared_ptr<const detail::Node> node) : _node( std::move( node ) ) {}

Formula Formula::make(Op op, std::string name, EntityGroup group, Formula lhs, Formula rhs)
{
  std::size_t h = combine( 0, static_cast<std::size_t>( op ) );
  h = combine( h, std::hash<std::string>{}( name ) );
  for ( const auto& e : group )
  {
    h = combine( h, std::hash<std::string>{}( e ) );
  }
  if ( has_lhs( op ) )
  {
    h = combine( h, lhs.hash() );
  }
  if ( is_binary( op ) )
  {
    h = combine( h, rhs.hash() );
  }
  return Formula( std::make_shared<const detail::Node>(
      detail::Node{ op, std::move( name ), std::move( group ), std::move( lhs ), std::move( rhs ), h } ) );
}

Formula Formula::bottom() { return Formula(); }
Formula Formula::top() { return make( Op::Top, {}, {}, {}, {} ); }

Formula Formula::var(std::string name)
{
  if ( name.empty() )
  {
    throw Error( "variable name must not be empty" );
  }
  return make( Op::Var, std::move( name ), {}, {}, {} );
}

Formula Formula::implies(Formula lhs, Formula rhs) { return make( Op::Implies, {}, {}, std::move( lhs ), std::move( rhs ) ); }

Formula Formula::belief(EntityGroup group, Formula body)
{
  if ( group.empty() )
  {
    throw Error( "belief group must be non-empty" );
  }
  return make( Op::Belief, {}, std::move( group ), std::move( body ), {} );
}

Formula Formula::next(Formula body) { return make( Op::Next, {}, {}, std::move( body ), {} ); }
Formula Formula::prev(Formula body) { return make( Op::Prev, {}, {}, std::move( body ), {} ); }
Formula Formula::until(Formula lhs, Formula rhs) { return make( Op::Until, {}, {}, std::move( lhs ), std::move( rhs ) ); }
Formula Formula::since(Formula lhs, Formula rhs) { return make( Op::Since, {}, {}, std::move( lhs ), std::move( rhs ) ); }
Formula Formula::negation(Formula body) { return make( Op::Not, {}, {}, std::move( body ), {} ); }
Formula Formula::conj(Formula lhs, Formula rhs) { return make( Op::And, {}, {}, std::move( lhs ), std::move( rhs ) ); }
Formula Formula::disj(Formula lhs, Formula rhs) { return make( Op::Or, {}, {}, std::move( lhs ), std::move( rhs ) ); }
Formula Formula::iff(Formula lhs, Formula rhs) { return make( Op::Iff, {}, {}, std::move( lhs ), std::move( rhs ) ); }
Formula Formula::globally(Formula body) { return make( Op::Globally, {}, {}, std::move( body ), {} ); }
Formula Formula::finally(Formula body) { return make( Op::Finally, {}, {}, std::move( body ), {} ); }
Formula Formula::historically(Formula body) { return make( Op::Historically, {}, {}, std::move( body ), {} ); }

Formula Formula::conj(const std::vector<Formula>& parts)
{
  if ( parts.empty() )
  {
    return top();
  }
  Formula acc = parts.back();
  for ( auto it = parts.rbegin() + 1; it != parts.rend(); ++it )
  {
    acc = conj( *it, acc );
  }
  return acc;
}

Formula Formula::disj(const std::vector<Formula>& parts)
{
  if ( parts.empty() )
  {
    return bottom();
  }
  Formula acc = parts.back();
  for ( auto it = parts.rbegin() + 1; it != parts.rend(); ++it )
  {
    acc = disj( *it, acc );
  }
  return acc;
}

Formula Formula::mk_not(Formula f)
{
  if ( f.is_bottom() )
    return top();
  if ( f.is_top() )
    return bottom();
  if ( f.op() == Op::Not )
    return f.body();
  return negation( std::move( f ) );
}

Formula Formula::mk_and(Formula lhs, Formula rhs)
{
  if ( lhs.is_bottom() || rhs.is_bottom() )
    return bottom();
  if ( lhs.is_top() )
    return rhs;
  if ( rhs.is_top() )
    return lhs;
  if ( lhs == rhs )
    return lhs;
  return conj( std::move( lhs ), std::move( rhs ) );
}

Formula Formula::mk_or(Formula lhs, Formula rhs)
{
  if ( lhs.is_top() || rhs.is_top() )
    return top();
  if ( lhs.is_bottom() )
    return rhs;
  if ( rhs.is_bottom() )
    return lhs;
  if ( lhs == rhs )
    return lhs;
  return disj( std::move( lhs ), std::move( rhs ) );
}

Formula Formula::mk_implies(Formula lhs, Formula rhs)
{
  if ( lhs.is_bottom() || rhs.is_top() )
    return top();
  if ( lhs.is_top() )
    return rhs;
  if ( rhs.is_bottom() )
    return mk_not( std::move( lhs ) );
  return implies( std::move( lhs ), std::move( rhs ) );
}

Formula Formula::mk_iff(Formula lhs, Formula rhs)
{
  if ( lhs.is_top() )
    return rhs;
  if ( rhs.is_top() )
    return lhs;
  if ( lhs.is_bottom() )
    return mk_not( std::move( rhs ) );
  if ( rhs.is_bottom() )
    return mk_not( std::move( lhs ) );
  if ( lhs == rhs )
    return top();
  return iff( std::move( lhs ), std::move( rhs ) );
}

Op Formula::op() const { return _node->op; }
const std::string& Formula::name() const { return _node->name; }
const EntityGroup& Formula::group() const { return _node->group; }
const Formula& Formula::lhs() const { return _node->lhs; }
const Formula& Formula::rhs() const { return _node->rhs; }
std::size_t Formula::hash() const { return _node->hash; }
const void* Formula::id() const { return _node.get(); }

bool operator==(const Formula& a, const Formula& b)
{
  if ( a._node == b._node )
    return true;
  if ( a.hash() != b.hash() || a.op() != b.op() || a.name() != b.name() || a.group() != b.group() )
    return false;
  if ( has_lhs( a.op() ) && !( a.lhs() == b.lhs() ) )
    return false;
  if ( is_binary( a.op() ) && !( a.rhs() == b.rhs() ) )
    return false;
  return true;
}

bool operator<(const Formula& a, const Formula& b)
{
  if ( a.id() == b.id() )
    return false;
  if ( a.op() != b.op() )
    return a.op() < b.op();
  if ( a.name() != b.name() )
    return a.name() < b.name();
  if ( a.group() != b.group() )
    return a.group() < b.group();
  if ( has_lhs( a.op() ) )
  {
    if ( a.lhs() < b.lhs() )
      return true;
    if ( b.lhs() < a.lhs() )
      return false;
  }
  if ( is_binary( a.op() ) )
  {
    return a.rhs() < b.rhs();
  }
  return false;
}

namespace
{

Formula expand_rec(const Formula& f, std::unordered_map<const void*, Formula>& memo)
{
  if ( auto it = memo.find( f.id() ); it != memo.end() )
  {
    return it->second;
  }
  const auto bot = Formula::bottom();
  auto neg = [&]( Formula x ) { return Formula::implies( std::move( x ), bot ); };
  Formula out;
  switch ( f.op() )
  {
  case Op::Bottom:
  case Op::Var:
    out = f;
    break;
  case Op::Top:
    out = neg( bot );
    break;
  case Op::Implies:
    out = Formula::implies( expand_rec( f.lhs(), memo ), expand_rec( f.rhs(), memo ) );
    break;
  case Op::Belief:
    out = Formula::belief( f.group(), expand_rec( f.body(), memo ) );
    break;
  case Op::Next:
    out = Formula::next( expand_rec( f.body(), memo ) );
    break;
  case Op::Prev:
    out = Formula::prev( expand_rec( f.body(), memo ) );
    break;
  case Op::Until:
    out = Formula::until( expand_rec( f.lhs(), memo ), expand_rec( f.rhs(), memo ) );
    break;
  case Op::Since:
    out = Formula::since( expand_rec( f.lhs(), memo ), expand_rec( f.rhs(), memo ) );
    break;
  case Op::Not:
    out = neg( expand_rec( f.body(), memo ) );
    break;
  case Op::Or:
    // a | b == !a -> b
    out = Formula::implies( neg( expand_rec( f.lhs(), memo ) ), expand_rec( f.rhs(), memo ) );
    break;
  case Op::And:
    // a & b == !(a -> !b)
    out = neg( Formula::implies( expand_rec( f.lhs(), memo ), neg( expand_rec( f.rhs(), memo ) ) ) );
    break;
  case Op::Iff:
  {
    const auto a = expand_rec( f.lhs(), memo );
    const auto b = expand_rec( f.rhs(), memo );
    out = neg( Formula::implies( Formula::implies( a, b ), neg( Formula::implies( b, a ) ) ) );
    break;
  }
  case Op::Finally:
    // F a == true U a
    out = Formula::until( neg( bot ), expand_rec( f.body(), memo ) );
    break;
  case Op::Globally:
    // G a == !(true U !a)
    out = neg( Formula::until( neg( bot ), neg( expand_rec( f.body(), memo ) ) ) );
    break;
  case Op::Historically:
    // H a == !(true S !a)
    out = neg( Formula::since( neg( bot ), neg( expand_rec( f.body(), memo ) ) ) );
    break;
  }
  memo.emplace( f.id(), out );
  return out;
}

template <typename Visit>
void walk(const Formula& f, Visit&& visit)
{
  visit( f );
  if ( has_lhs( f.op() ) )
  {
    walk( f.lhs(), visit );
  }
  if ( is_binary( f.op() ) )
  {
    walk( f.rhs(), visit );
  }
}

} // namespace

Formula expand_derived(const Formula& f)
{
  std::unordered_map<const void*, Formula> memo;
  return expand_rec( f, memo );
}

std::set<EntityId> atoms_of(const Formula& f)
{
  std::set<EntityId> out;
  walk( f, [&]( const Formula& g ) {
    if ( g.op() == Op::Belief )
    {
      out.insert( g.group().begin(), g.group().end() );
    }
  } );
  return out;
}

std::set<std::string> variables_of(const Formula& f)
{
  std::set<std::string> out;
  walk( f, [&]( const Formula& g ) {
    if ( g.op() == Op::Var )
    {
      out.insert( g.name() );
    }
  } );
  return out;
}

bool is_subgroup(const EntityGroup& e, const EntityGroup& f)
{
  if ( e.empty() || f.empty() )
  {
    throw Error( "belief groups must be non-empty" );
  }
  return std::includes( f.begin(), f.end(), e.begin(), e.end() );
}

bool contains_belief(const Formula& f)
{
  bool found = false;
  walk( f, [&]( const Formula& g ) { found = found || g.op() == Op::Belief; } );
  return found;
}

bool contains_temporal(const Formula& f)
{
  bool found = false;
  walk( f, [&]( const Formula& g ) { found = found || is_temporal( g.op() ); } );
  return found;
}

bool evaluate_propositional(const Formula& f, const std::map<std::string, bool>& assignment)
{
  switch ( f.op() )
  {
  case Op::Bottom:
    return false;
  case Op::Top:
    return true;
  case Op::Var:
  {
    const auto it = assignment.find( f.name() );
    return it != assignment.end() && it->second;
  }
  case Op::Implies:
    return !evaluate_propositional( f.lhs(), assignment ) || evaluate_propositional( f.rhs(), assignment );
  case Op::Not:
    return !evaluate_propositional( f.body(), assignment );
  case Op::And:
    return evaluate_propositional( f.lhs(), assignment ) && evaluate_propositional( f.rhs(), assignment );
  case Op::Or:
    return evaluate_propositional( f.lhs(), assignment ) || evaluate_propositional( f.rhs(), assignment );
  case Op::Iff:
    return evaluate_propositional( f.lhs(), assignment ) == evaluate_propositional( f.rhs(), assignment );
  default:
    throw Error( "evaluate_propositional: formula has belief or temporal operators: " + to_string( f ) );
  }
}

Formula substitute(const Formula& f, const std::map<std::string, Formula>& subst)
{
  switch ( f.op() )
  {
  case Op::Bottom:
  case Op::Top:
    return f;
  case Op::Var:
  {
    const auto it = subst.find( f.name() );
    return it == subst.end() ? f : it->second;
  }
  case Op::Belief:
    return Formula::belief( f.group(), substitute( f.body(), subst ) );
  case Op::Implies:
    return Formula::implies( substitute( f.lhs(), subst ), substitute( f.rhs(), subst ) );
  case Op::Until:
    return Formula::until( substitute( f.lhs(), subst ), substitute( f.rhs(), subst ) );
  case Op::Since:
    return Formula::since( substitute( f.lhs(), subst ), substitute( f.rhs(), subst ) );
  case Op::And:
    return Formula::conj( substitute( f.lhs(), subst ), substitute( f.rhs(), subst ) );
  case Op::Or:
    return Formula::disj( substitute( f.lhs(), subst ), substitute( f.rhs(), subst ) );
  case Op::Iff:
    return Formula::iff( substitute( f.lhs(), subst ), substitute( f.rhs(), subst ) );
  case Op::Next:
    return Formula::next( substitute( f.body(), subst ) );
  case Op::Prev:
    return Formula::prev( substitute( f.body(), subst ) );
  case Op::Not:
    return Formula::negation( substitute( f.body(), subst ) );
  case Op::Globally:
    return Formula::globally( substitute( f.body(), subst ) );
  case Op::Finally:
    return Formula::finally( substitute( f.body(), subst ) );
  case Op::Historically:
    return Formula::historically( substitute( f.body(), subst ) );
  }
  return f;
}

namespace
{

// Binding strength, higher binds tighter.
int precedence(Op op)
{
  switch ( op )
  {
  case Op::Iff:
    return 1;
  case Op::Implies:
    return 2;
  case Op::And:
    return 3;
  case Op::Or:
    return 4;
  case Op::Until:
  case Op::Since:
    return 5;
  case Op::Not:
  case Op::Next:
  case Op::Prev:
  case Op::Globally:
  case Op::Finally:
  case Op::Historically:
    return 6;
  default:
    return 7;
  }
}

const char* symbol(Op op)
{
  switch ( op )
  {
  case Op::Iff:
    return " <-> ";
  case Op::Implies:
    return " -> ";
  case Op::And:
    return " & ";
  case Op::Or:
    return " | ";
  case Op::Until:
    return " U ";
  case Op::Since:
    return " S ";
  case Op::Not:
    return "!";
  case Op::Next:
    return "X ";
  case Op::Prev:
    return "P ";
  case Op::Globally:
    return "G ";
  case Op::Finally:
    return "F ";
  case Op::Historically:
    return "H ";
  default:
    return "";
  }
}

void print(std::ostream& os, const Formula& f, int context)
{
  const int prec = precedence( f.op() );
  const bool parens = prec < context;
  if ( parens )
    os << '(';
  switch ( f.op() )
  {
  case Op::Bottom:
    os << "false";
    break;
  case Op::Top:
    os << "true";
    break;
  case Op::Var:
    os << f.name();
    break;
  case Op::Belief:
  {
    os << '{';
    bool first = true;
    for ( const auto& e : f.group() )
    {
      os << ( first ? "" : "," ) << e;
      first = false;
    }
    os << "}: (";
    print( os, f.body(), 0 );
    os << ')';
    break;
  }
  default:
    if ( is_binary( f.op() ) )
    {
      // Same-precedence children are always parenthesised, so associativity
      // never matters for re-parsing.
      print( os, f.lhs(), prec + 1 );
      os << symbol( f.op() );
      print( os, f.rhs(), prec + 1 );
    }
    else
    {
      os << symbol( f.op() );
      print( os, f.body(), prec );
    }
  }
  if ( parens )
    os << ')';
}

} // namespace

std::string to_string(const Formula& f)
{
  std::ostringstream os;
  print( os, f, 0 );
  return os.str();
}

bool is_identifier(const std::string& s)
{
  if ( s.empty() )
    return false;
  const auto alpha = []( char c ) { return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || c == '_'; };
  const auto digit = []( char c ) { return c >= '0' && c <= '9'; };
  if ( !alpha( s[0] ) )
    return false;
  for ( char c : s )
  {
    if ( !alpha( c ) && !digit( c ) )
      return false;
  }
  return true;
}

} // namespace confres
