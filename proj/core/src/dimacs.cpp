#include "confres/dimacs.hpp"

#include "confres/formula.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace confres::sat
{

namespace
{

[[noreturn]] void fail(int line, const std::string& msg)
{
  throw Error( "dimacs line " + std::to_string( line ) + ": " + msg );
}

bool parse_int(const std::string& tok, long long& out)
{
  if ( tok.empty() || tok.size() > 18 )
    return false;
  std::size_t i = ( tok[0] == '-' ) ? 1 : 0;
  if ( i == tok.size() )
    return false;
  long long v = 0;
  for ( ; i < tok.size(); ++i )
  {
    if ( tok[i] < '0' || tok[i] > '9' )
      return false;
    v = v * 10 + ( tok[i] - '0' );
  }
  out = tok[0] == '-' ? -v : v;
  return true;
}

} // namespace

CnfProblem read_dimacs(std::istream& in)
{
  CnfProblem p;
  bool have_header = false;
  long long declared_clauses = 0;
  Clause current;
  std::string line;
  int line_no = 0;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    std::istringstream ls( line );
    std::string tok;
    if ( !( ls >> tok ) || tok[0] == 'c' )
      continue;
    if ( tok == "%" )
      break; // SATLIB trailer
    if ( tok == "p" )
    {
      if ( have_header )
        fail( line_no, "duplicate problem line" );
      std::string fmt, vars, clauses, extra;
      long long v = 0;
      if ( !( ls >> fmt >> vars >> clauses ) || fmt != "cnf" || !parse_int( vars, v ) ||
           !parse_int( clauses, declared_clauses ) || v < 0 || declared_clauses < 0 ||
           v > std::numeric_limits<int>::max() )
        fail( line_no, "expected 'p cnf <vars> <clauses>'" );
      if ( ls >> extra )
        fail( line_no, "trailing tokens after problem line" );
      p.num_vars = static_cast<std::uint32_t>( v );
      have_header = true;
      continue;
    }
    if ( !have_header )
      fail( line_no, "clause before problem line" );
    do
    {
      long long v = 0;
      if ( !parse_int( tok, v ) )
        fail( line_no, "bad literal '" + tok + "'" );
      if ( v == 0 )
      {
        p.clauses.push_back( std::move( current ) );
        current.clear();
        continue;
      }
      const auto var = static_cast<unsigned long long>( v < 0 ? -v : v );
      if ( var > p.num_vars )
        fail( line_no, "literal " + tok + " exceeds declared variable count" );
      current.push_back( Literal{ static_cast<std::uint32_t>( var ), v > 0 } );
    } while ( ls >> tok );
  }
  if ( !have_header )
    fail( line_no, "missing problem line" );
  if ( !current.empty() )
    fail( line_no, "last clause not terminated by 0" );
  if ( static_cast<long long>( p.clauses.size() ) != declared_clauses )
    fail( line_no, "declared " + std::to_string( declared_clauses ) + " clauses, found " +
                       std::to_string( p.clauses.size() ) );
  return p;
}

void write_dimacs(std::ostream& out, const CnfProblem& p)
{
  out << "p cnf " << p.num_vars << ' ' << p.clauses.size() << '\n';
  for ( const auto& c : p.clauses )
  {
    for ( const auto& l : c )
      out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

std::vector<std::pair<AssumptionId, Literal>> read_assumptions(std::istream& in, std::uint32_t num_vars)
{
  std::vector<std::pair<AssumptionId, Literal>> out;
  std::string tok;
  while ( in >> tok )
  {
    long long v = 0;
    if ( !parse_int( tok, v ) || v == 0 )
      throw Error( "assumptions: bad literal '" + tok + "'" );
    const auto var = static_cast<unsigned long long>( v < 0 ? -v : v );
    if ( var > num_vars )
      throw Error( "assumptions: literal " + tok + " exceeds variable count" );
    out.emplace_back( static_cast<AssumptionId>( out.size() ), Literal{ static_cast<std::uint32_t>( var ), v > 0 } );
  }
  return out;
}

void write_assumptions(std::ostream& out, const CnfProblem& p)
{
  for ( const auto& [_, lit] : p.assumptions )
    out << lit.to_dimacs() << '\n';
}

void write_var_map(std::ostream& out, const std::map<std::uint32_t, std::string>& names)
{
  for ( const auto& [idx, name] : names )
    out << idx << ' ' << name << '\n';
}

} // namespace confres::sat
