#pragma once

#include "confres/cnf.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace confres::sat
{

/// Parses DIMACS CNF. `c` lines are comments; clauses may span lines and end
/// with 0. Throws Error (with a line number) on malformed input.
CnfProblem read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const CnfProblem& p);

/// Assumption sidecar: whitespace-separated non-zero integers. The i-th
/// literal gets AssumptionId i.
std::vector<std::pair<AssumptionId, Literal>> read_assumptions(std::istream& in, std::uint32_t num_vars);
void write_assumptions(std::ostream& out, const CnfProblem& p);

/// Variable map sidecar, one `<idx> <name>` line per named variable.
void write_var_map(std::ostream& out, const std::map<std::uint32_t, std::string>& names);

} // namespace confres::sat
