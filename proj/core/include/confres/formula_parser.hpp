#pragma once

#include "confres/formula.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace confres
{

struct Diagnostic
{
  int line = 0;
  int column = 0;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string to_string(const Diagnostic& d);

enum class Tok
{
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Semicolon,
  Dot,
  Star,
  Bang,
  Amp,
  Pipe,
  Arrow,     // ->
  DArrow,    // <->
  FatArrow,  // =>
  Assign,    // :=
  Gt,        // >
  Eq,        // =
  Remark,    // "-- text" up to end of line; text holds the remark
  Invalid,
  End,
};

struct Token
{
  Tok kind = Tok::End;
  std::string text;
  int line = 0;
  int column = 0;
};

/// Splits one line into tokens. `#` starts a comment. The returned vector
/// always ends with a Tok::End token.
std::vector<Token> tokenize_line(std::string_view line, int line_no);

/// Keywords that cannot be used as variable or entity names.
bool is_reserved_word(const std::string& s);

/// Recursive-descent formula parser over a token stream.
///
/// Precedence from tightest to loosest: `e:` belief prefix, unary `! X P G F
/// H`, binary `U S` (right associative), `|`, `&`, `->` (right associative),
/// `<->`. Parsing stops at the first token that cannot continue a formula.
class FormulaParser
{
public:
  explicit FormulaParser(std::span<const Token> tokens, std::size_t pos = 0);

  /// Parses one formula; on failure returns nullopt and records a diagnostic.
  std::optional<Formula> parse();

  [[nodiscard]] std::size_t position() const { return _pos; }
  [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const { return _diags; }

private:
  std::optional<Formula> parse_iff();
  std::optional<Formula> parse_implies();
  std::optional<Formula> parse_and();
  std::optional<Formula> parse_or();
  std::optional<Formula> parse_temporal();
  std::optional<Formula> parse_unary();
  std::optional<Formula> parse_primary();
  std::optional<Formula> parse_belief_body(EntityGroup group);

  const Token& peek() const;
  const Token& advance();
  bool accept(Tok kind);
  bool is_keyword(const char* kw) const;
  void fail(const Token& at, std::string message);

  std::span<const Token> _tokens;
  std::size_t _pos;
  int _depth = 0;
  std::vector<Diagnostic> _diags;
};

/// Parses a complete formula from text. Throws Error with the diagnostic text
/// on failure.
Formula parse_formula(std::string_view text);

} // namespace confres
