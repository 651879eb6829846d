#include "confres/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

std::optional<std::string> slurp(const std::string& path)
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    std::cerr << "error: cannot read " << path << '\n';
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char** argv)
{
  using namespace confres;
  CLI::App app{ "Conflict analysis for two cooperating agents" };
  app.require_subcommand( 1 );

  std::string file;
  AnalyzeOptions opts;
  std::string out_path;
  std::string mode;
  auto add_analysis_flags = [&]( CLI::App* sub ) {
    sub->add_option( "file", file, "scenario file" )->required();
    sub->add_option( "--horizon", opts.horizon, "override the horizon" );
    sub->add_option( "--max-level", opts.max_level, "highest resolution level 0..4" );
    sub->add_option( "--mode", mode, "sequence or reactive" )->check( CLI::IsMember( { "sequence", "reactive" } ) );
    sub->add_option( "--budget", opts.budget, "strategy enumeration budget" );
  };

  auto* analyze = app.add_subcommand( "analyze", "find a winning strategy, resolving conflicts" );
  add_analysis_flags( analyze );
  analyze->add_option( "--out", out_path, "write the machine report here" );

  auto* explain = app.add_subcommand( "explain", "print justification chains of the conflicts" );
  add_analysis_flags( explain );

  auto* consistency = app.add_subcommand( "consistency", "list maximal consistent evidence groups" );
  consistency->add_option( "file", file, "scenario file" )->required();

  SatOptions sat_opts;
  std::string assume_path;
  auto* sat = app.add_subcommand( "sat", "solve a DIMACS CNF file" );
  sat->add_option( "file", file, "DIMACS file" )->required();
  sat->add_flag( "--core", sat_opts.core, "print a minimal assumption core when UNSAT" );
  sat->add_option( "--assume", assume_path, "file with assumption literals" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const int rc = app.exit( e );
    return rc == 0 ? 0 : exit_code::input_error;
  }

  if ( mode == "sequence" )
    opts.mode = StrategyMode::Sequence;
  else if ( mode == "reactive" )
    opts.mode = StrategyMode::Reactive;

  const auto text = slurp( file );
  if ( !text )
    return exit_code::input_error;

  if ( *analyze )
  {
    std::string machine;
    const int rc = cmd_analyze( *text, opts, std::cout, std::cerr, out_path.empty() ? nullptr : &machine );
    if ( !out_path.empty() && rc != exit_code::input_error )
    {
      std::ofstream out( out_path, std::ios::binary );
      out << machine;
      if ( !out )
      {
        std::cerr << "error: cannot write " << out_path << '\n';
        return exit_code::input_error;
      }
    }
    return rc;
  }
  if ( *explain )
    return cmd_explain( *text, opts, std::cout, std::cerr );
  if ( *consistency )
    return cmd_consistency( *text, std::cout, std::cerr );

  if ( !assume_path.empty() )
  {
    sat_opts.assumptions = slurp( assume_path );
    if ( !sat_opts.assumptions )
      return exit_code::input_error;
  }
  return cmd_sat( *text, sat_opts, std::cout, std::cerr );
}
