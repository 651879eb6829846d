#pragma once

#include "confres/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace corpus
{

inline const std::vector<std::string> names{ "ex1_evidence", "ex3", "ex4_observation", "ex5", "ex6", "ex7" };

inline std::string read(const std::string& name)
{
  std::ifstream in( std::string( CONFRES_SCENARIO_DIR ) + "/" + name + ".scn" );
  if ( !in )
    throw std::runtime_error( "missing corpus file " + name );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline confres::ScenarioDoc doc(const std::string& name)
{
  auto parsed = confres::parse_scenario( read( name ) );
  if ( !parsed.doc )
    throw std::runtime_error( "corpus file " + name + " does not parse" );
  return *parsed.doc;
}

inline confres::Problem problem(const std::string& name) { return confres::to_problem( doc( name ) ); }

} // namespace corpus
