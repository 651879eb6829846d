#include "confres/commands.hpp"

#include "confres/dimacs.hpp"
#include "confres/encoder.hpp"
#include "confres/mus.hpp"
#include "confres/report.hpp"
#include "confres/solver.hpp"
#include "confres/tseitin.hpp"

#include <ostream>
#include <sstream>

namespace confres
{

std::optional<ScenarioDoc> load_scenario(std::string_view text, const AnalyzeOptions& opts, std::ostream& err)
{
  auto parsed = parse_scenario( text );
  if ( !parsed.doc )
  {
    for ( const auto& d : parsed.diagnostics )
      err << to_string( d ) << '\n';
    return std::nullopt;
  }
  auto doc = std::move( *parsed.doc );
  if ( opts.horizon )
  {
    if ( *opts.horizon > 16 )
    {
      err << "error: horizon must be at most 16\n";
      return std::nullopt;
    }
    doc.horizon = *opts.horizon;
  }
  if ( opts.max_level )
  {
    if ( *opts.max_level < 0 || *opts.max_level > 4 )
    {
      err << "error: max level must be in 0..4\n";
      return std::nullopt;
    }
    doc.max_level = *opts.max_level;
  }
  if ( opts.mode )
    doc.mode = *opts.mode;
  if ( opts.budget )
    doc.budget = *opts.budget;
  return doc;
}

namespace
{

std::optional<AnalysisResult> run(const ScenarioDoc& doc, const Problem& p, std::ostream& err)
{
  try
  {
    p.world.validate();
    return find_strategy( p );
  }
  catch ( const Error& e )
  {
    err << "error: " << ( doc.name.empty() ? "" : doc.name + ": " ) << e.what() << '\n';
    return std::nullopt;
  }
}

} // namespace

int cmd_analyze(std::string_view text, const AnalyzeOptions& opts, std::ostream& out, std::ostream& err,
                std::string* machine)
{
  const auto doc = load_scenario( text, opts, err );
  if ( !doc )
    return exit_code::input_error;
  const auto p = to_problem( *doc );
  const auto r = run( *doc, p, err );
  if ( !r )
    return exit_code::input_error;
  const auto report = make_report( doc->name, p, *r );
  out << render_text( report );
  if ( machine )
    *machine = to_json( report );
  return r->resolved ? exit_code::ok : exit_code::unresolved;
}

int cmd_explain(std::string_view text, const AnalyzeOptions& opts, std::ostream& out, std::ostream& err)
{
  const auto doc = load_scenario( text, opts, err );
  if ( !doc )
    return exit_code::input_error;
  const auto p = to_problem( *doc );
  const auto r = run( *doc, p, err );
  if ( !r )
    return exit_code::input_error;
  const auto report = make_report( doc->name, p, *r );
  if ( report.causes.empty() )
    out << "no conflict\n";
  for ( const auto& c : report.causes )
  {
    out << "conflict in " << c.group << " on " << to_string( c.violated ) << '\n';
    for ( const auto& l : c.chain )
    {
      out << "  <- " << l.atom << " [" << l.role << "] " << l.body;
      if ( !l.provenance.empty() )
        out << "  (" << l.provenance << ")";
      out << '\n';
    }
  }
  return exit_code::ok;
}

int cmd_consistency(std::string_view text, std::ostream& out, std::ostream& err)
{
  const auto doc = load_scenario( text, {}, err );
  if ( !doc )
    return exit_code::input_error;
  const auto p = to_problem( *doc );
  try
  {
    p.world.validate();
    const auto worlds = max_consistent_sets( p.evidences, p.facts, p.world, p.horizon );
    const auto world = unroll_world( p.world, p.horizon );
    for ( const auto& g : worlds.groups )
    {
      sat::CnfBuilder b;
      b.assert_formula( world );
      b.assert_formula( encode_goal( g.constraint, p.horizon, 0, &p.world ) );
      const auto res = sat::solve( b.problem() );
      out << "group " << g.name() << '\n';
      if ( res.sat )
      {
        const auto run = decode_run( p.world, p.horizon, [&]( const std::string& n ) {
          const auto it = b.names().find( n );
          return it != b.names().end() && res.model[it->second];
        } );
        out << "  model " << render_state( p.world, run.states.front() ) << '\n';
      }
    }
    if ( !worlds.degenerate.empty() )
    {
      out << "degenerate";
      for ( const auto& a : worlds.degenerate )
        out << ' ' << a;
      out << '\n';
    }
  }
  catch ( const Error& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_code::input_error;
  }
  return exit_code::ok;
}

int cmd_sat(std::string_view dimacs, const SatOptions& opts, std::ostream& out, std::ostream& err)
{
  sat::CnfProblem p;
  try
  {
    std::istringstream in{ std::string( dimacs ) };
    p = sat::read_dimacs( in );
    if ( opts.assumptions )
    {
      std::istringstream ain( *opts.assumptions );
      p.assumptions = sat::read_assumptions( ain, p.num_vars );
    }
  }
  catch ( const Error& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_code::input_error;
  }
  const auto res = sat::solve( p );
  if ( res.sat )
  {
    out << "SAT\n";
    for ( std::uint32_t v = 1; v <= p.num_vars; ++v )
      out << ( res.model[v] ? "" : "-" ) << v << ' ';
    out << "0\n";
    return exit_code::sat;
  }
  out << "UNSAT\n";
  if ( opts.core )
  {
    const auto core = res.core.empty() ? res.core : sat::minimize_core( p, res.core );
    out << "core";
    for ( const auto id : core )
    {
      for ( const auto& [aid, lit] : p.assumptions )
      {
        if ( aid == id )
          out << ' ' << lit.to_dimacs();
      }
    }
    out << " 0\n";
  }
  return exit_code::unsat;
}

} // namespace confres
