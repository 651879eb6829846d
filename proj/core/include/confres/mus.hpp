#pragma once

#include "confres/cnf.hpp"

#include <set>

namespace confres::sat
{

/// Deletion-based shrinking of an unsatisfiable assumption set.
///
/// Returns a subset of `core` under which `p` is still Unsat and from which no
/// single element can be dropped. Throws Error if `p` restricted to `core` is
/// satisfiable. Clauses of `p` are always kept.
std::set<AssumptionId> minimize_core(const CnfProblem& p, const std::set<AssumptionId>& core);

} // namespace confres::sat
