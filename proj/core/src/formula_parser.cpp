#include "confres/formula_parser.hpp"

#include <cctype>
#include <sstream>

namespace confres
{

namespace
{
constexpr int max_depth = 200;

bool ident_start(char c)
{
  return std::isalpha( static_cast<unsigned char>( c ) ) || c == '_';
}

bool ident_char(char c)
{
  return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_';
}
} // namespace

std::string to_string(const Diagnostic& d)
{
  std::ostringstream os;
  os << d.line << ':' << d.column << ": " << d.message;
  return os.str();
}

std::vector<Token> tokenize_line(std::string_view line, int line_no)
{
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&]( Tok kind, std::size_t start, std::size_t len ) {
    out.push_back( Token{ kind, std::string( line.substr( start, len ) ), line_no, static_cast<int>( start ) + 1 } );
    i = start + len;
  };
  while ( i < line.size() )
  {
    const char c = line[i];
    if ( c == ' ' || c == '\t' || c == '\r' )
    {
      ++i;
      continue;
    }
    if ( c == '#' )
    {
      break;
    }
    const auto two = line.substr( i, 2 );
    if ( two == "--" )
    {
      auto text = line.substr( i + 2 );
      while ( !text.empty() && ( text.front() == ' ' || text.front() == '\t' ) )
        text.remove_prefix( 1 );
      while ( !text.empty() && ( text.back() == ' ' || text.back() == '\t' || text.back() == '\r' ) )
        text.remove_suffix( 1 );
      out.push_back( Token{ Tok::Remark, std::string( text ), line_no, static_cast<int>( i ) + 1 } );
      i = line.size();
      break;
    }
    if ( line.substr( i, 3 ) == "<->" )
    {
      push( Tok::DArrow, i, 3 );
      continue;
    }
    if ( two == "->" )
    {
      push( Tok::Arrow, i, 2 );
      continue;
    }
    if ( two == "=>" )
    {
      push( Tok::FatArrow, i, 2 );
      continue;
    }
    if ( two == ":=" )
    {
      push( Tok::Assign, i, 2 );
      continue;
    }
    if ( ident_start( c ) )
    {
      std::size_t j = i;
      while ( j < line.size() && ident_char( line[j] ) )
        ++j;
      push( Tok::Ident, i, j - i );
      continue;
    }
    if ( std::isdigit( static_cast<unsigned char>( c ) ) )
    {
      std::size_t j = i;
      while ( j < line.size() && std::isdigit( static_cast<unsigned char>( line[j] ) ) )
        ++j;
      push( Tok::Number, i, j - i );
      continue;
    }
    Tok kind = Tok::Invalid;
    switch ( c )
    {
    case '(': kind = Tok::LParen; break;
    case ')': kind = Tok::RParen; break;
    case '{': kind = Tok::LBrace; break;
    case '}': kind = Tok::RBrace; break;
    case '[': kind = Tok::LBracket; break;
    case ']': kind = Tok::RBracket; break;
    case ',': kind = Tok::Comma; break;
    case ':': kind = Tok::Colon; break;
    case ';': kind = Tok::Semicolon; break;
    case '.': kind = Tok::Dot; break;
    case '*': kind = Tok::Star; break;
    case '!': kind = Tok::Bang; break;
    case '&': kind = Tok::Amp; break;
    case '|': kind = Tok::Pipe; break;
    case '>': kind = Tok::Gt; break;
    case '=': kind = Tok::Eq; break;
    default: break;
    }
    push( kind, i, 1 );
  }
  out.push_back( Token{ Tok::End, "", line_no, static_cast<int>( line.size() ) + 1 } );
  return out;
}

bool is_reserved_word(const std::string& s)
{
  static const char* const words[] = { "X", "P", "U", "S", "G", "F", "H", "true", "false" };
  for ( const char* w : words )
  {
    if ( s == w )
      return true;
  }
  return false;
}

FormulaParser::FormulaParser(std::span<const Token> tokens, std::size_t pos) : _tokens( tokens ), _pos( pos ) {}

const Token& FormulaParser::peek() const
{
  static const Token end{};
  return _pos < _tokens.size() ? _tokens[_pos] : end;
}

const Token& FormulaParser::advance()
{
  const Token& t = peek();
  if ( _pos < _tokens.size() )
    ++_pos;
  return t;
}

bool FormulaParser::accept(Tok kind)
{
  if ( peek().kind == kind )
  {
    advance();
    return true;
  }
  return false;
}

bool FormulaParser::is_keyword(const char* kw) const
{
  return peek().kind == Tok::Ident && peek().text == kw;
}

void FormulaParser::fail(const Token& at, std::string message)
{
  if ( _diags.empty() )
  {
    _diags.push_back( Diagnostic{ at.line, at.column, std::move( message ) } );
  }
}

std::optional<Formula> FormulaParser::parse()
{
  return parse_iff();
}

std::optional<Formula> FormulaParser::parse_iff()
{
  auto lhs = parse_implies();
  while ( lhs && accept( Tok::DArrow ) )
  {
    auto rhs = parse_implies();
    if ( !rhs )
      return std::nullopt;
    lhs = Formula::iff( *lhs, *rhs );
  }
  return lhs;
}

std::optional<Formula> FormulaParser::parse_implies()
{
  auto lhs = parse_and();
  if ( lhs && accept( Tok::Arrow ) )
  {
    if ( ++_depth > max_depth )
    {
      fail( peek(), "formula nested too deeply" );
      return std::nullopt;
    }
    auto rhs = parse_implies();
    --_depth;
    if ( !rhs )
      return std::nullopt;
    return Formula::implies( *lhs, *rhs );
  }
  return lhs;
}

std::optional<Formula> FormulaParser::parse_and()
{
  auto lhs = parse_or();
  while ( lhs && accept( Tok::Amp ) )
  {
    auto rhs = parse_or();
    if ( !rhs )
      return std::nullopt;
    lhs = Formula::conj( *lhs, *rhs );
  }
  return lhs;
}

std::optional<Formula> FormulaParser::parse_or()
{
  auto lhs = parse_temporal();
  while ( lhs && accept( Tok::Pipe ) )
  {
    auto rhs = parse_temporal();
    if ( !rhs )
      return std::nullopt;
    lhs = Formula::disj( *lhs, *rhs );
  }
  return lhs;
}

std::optional<Formula> FormulaParser::parse_temporal()
{
  auto lhs = parse_unary();
  if ( !lhs )
    return std::nullopt;
  const bool until = is_keyword( "U" );
  const bool since = is_keyword( "S" );
  if ( until || since )
  {
    advance();
    if ( ++_depth > max_depth )
    {
      fail( peek(), "formula nested too deeply" );
      return std::nullopt;
    }
    auto rhs = parse_temporal();
    --_depth;
    if ( !rhs )
      return std::nullopt;
    return until ? Formula::until( *lhs, *rhs ) : Formula::since( *lhs, *rhs );
  }
  return lhs;
}

std::optional<Formula> FormulaParser::parse_unary()
{
  if ( ++_depth > max_depth )
  {
    fail( peek(), "formula nested too deeply" );
    return std::nullopt;
  }
  std::optional<Formula> out;
  const Token& t = peek();
  if ( t.kind == Tok::Bang )
  {
    advance();
    if ( auto body = parse_unary() )
      out = Formula::negation( *body );
  }
  else if ( t.kind == Tok::Ident && t.text.size() == 1 && std::string_view( "XPGFH" ).find( t.text[0] ) != std::string_view::npos )
  {
    const char op = t.text[0];
    advance();
    if ( auto body = parse_unary() )
    {
      switch ( op )
      {
      case 'X': out = Formula::next( *body ); break;
      case 'P': out = Formula::prev( *body ); break;
      case 'G': out = Formula::globally( *body ); break;
      case 'F': out = Formula::finally( *body ); break;
      default: out = Formula::historically( *body ); break;
      }
    }
  }
  else
  {
    out = parse_primary();
  }
  --_depth;
  return out;
}

std::optional<Formula> FormulaParser::parse_belief_body(EntityGroup group)
{
  auto body = parse_unary();
  if ( !body )
    return std::nullopt;
  return Formula::belief( std::move( group ), *body );
}

std::optional<Formula> FormulaParser::parse_primary()
{
  const Token t = peek();
  switch ( t.kind )
  {
  case Tok::LParen:
  {
    advance();
    auto inner = parse_iff();
    if ( !inner )
      return std::nullopt;
    if ( !accept( Tok::RParen ) )
    {
      fail( peek(), "expected ')'" );
      return std::nullopt;
    }
    return inner;
  }
  case Tok::LBrace:
  {
    advance();
    EntityGroup group;
    do
    {
      const Token id = peek();
      if ( id.kind != Tok::Ident || is_reserved_word( id.text ) )
      {
        fail( id, "expected belief entity name" );
        return std::nullopt;
      }
      advance();
      group.insert( id.text );
    } while ( accept( Tok::Comma ) );
    if ( !accept( Tok::RBrace ) )
    {
      fail( peek(), "expected '}'" );
      return std::nullopt;
    }
    if ( !accept( Tok::Colon ) )
    {
      fail( peek(), "expected ':' after belief group" );
      return std::nullopt;
    }
    return parse_belief_body( std::move( group ) );
  }
  case Tok::Ident:
  {
    advance();
    if ( t.text == "true" )
      return Formula::top();
    if ( t.text == "false" )
      return Formula::bottom();
    if ( is_reserved_word( t.text ) )
    {
      fail( t, "unexpected operator '" + t.text + "'" );
      return std::nullopt;
    }
    if ( peek().kind == Tok::Colon )
    {
      advance();
      return parse_belief_body( EntityGroup{ t.text } );
    }
    return Formula::var( t.text );
  }
  case Tok::End:
    fail( t, "unexpected end of formula" );
    return std::nullopt;
  default:
    fail( t, "unexpected '" + t.text + "' in formula" );
    return std::nullopt;
  }
}

Formula parse_formula(std::string_view text)
{
  std::vector<Token> tokens;
  int line_no = 1;
  std::size_t start = 0;
  while ( start <= text.size() )
  {
    const auto nl = text.find( '\n', start );
    const auto line = text.substr( start, nl == std::string_view::npos ? std::string_view::npos : nl - start );
    auto toks = tokenize_line( line, line_no );
    toks.pop_back();
    tokens.insert( tokens.end(), toks.begin(), toks.end() );
    if ( nl == std::string_view::npos )
      break;
    start = nl + 1;
    ++line_no;
  }
  tokens.push_back( Token{ Tok::End, "", line_no, 0 } );

  FormulaParser parser( tokens );
  auto f = parser.parse();
  if ( f && tokens[parser.position()].kind != Tok::End )
  {
    const auto& t = tokens[parser.position()];
    throw Error( to_string( Diagnostic{ t.line, t.column, "unexpected '" + t.text + "' after formula" } ) );
  }
  if ( !f )
  {
    throw Error( parser.diagnostics().empty() ? std::string( "invalid formula" ) : to_string( parser.diagnostics().front() ) );
  }
  return *f;
}

} // namespace confres
