#pragma once

#include "confres/engine.hpp"
#include "confres/formula_parser.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confres
{

/// Parsed scenario file. Mirrors the text one to one; defaults are applied
/// by to_problem().
struct ScenarioDoc
{
  std::string name;
  unsigned horizon = 2;
  StrategyMode mode = StrategyMode::Sequence;
  int max_level = 4;
  std::uint64_t budget = default_strategy_budget;

  std::vector<std::string> variables;
  std::map<Role, std::vector<std::string>> actions;
  std::map<Role, std::vector<std::string>> observe;
  std::vector<Formula> init;
  std::vector<Formula> current;
  std::vector<ActionRule> rules;
  std::vector<Evidence> evidence;
  std::vector<Formula> facts;
  std::vector<Goal> goals;
  std::map<Role, std::map<GoalSet, std::uint64_t>> weights; // per agent
  std::map<GoalSet, std::uint64_t> combined;
  std::vector<EntityId> trust;
  std::vector<Evidence> truths;
  std::vector<Commitment> commitments;
  bool adoptable = false;

  friend bool operator==(const ScenarioDoc&, const ScenarioDoc&) = default;
};

struct ScenarioParse
{
  std::optional<ScenarioDoc> doc;
  std::vector<Diagnostic> diagnostics;
};

/// Never throws on malformed text; every problem found is reported with its
/// line and column and the document is returned only when there are none.
ScenarioParse parse_scenario(std::string_view text);

/// Canonical text that parses back to an equal document.
std::string render_scenario(const ScenarioDoc& doc);

/// Engine input with defaults applied (Env gets the single action `idle`
/// when it declares none).
Problem to_problem(const ScenarioDoc& doc);

} // namespace confres
