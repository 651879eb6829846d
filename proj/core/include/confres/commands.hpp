#pragma once

#include "confres/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace confres
{

namespace exit_code
{
constexpr int ok = 0;
constexpr int unresolved = 10;
constexpr int input_error = 2;
constexpr int sat = 10;
constexpr int unsat = 20;
} // namespace exit_code

/// Command-line overrides of the scenario header.
struct AnalyzeOptions
{
  std::optional<unsigned> horizon;
  std::optional<int> max_level;
  std::optional<StrategyMode> mode;
  std::optional<std::uint64_t> budget;
};

/// Parses and validates, printing diagnostics to `err`. The options are applied
/// on top of the header.
std::optional<ScenarioDoc> load_scenario(std::string_view text, const AnalyzeOptions& opts, std::ostream& err);

/// Human report on `out`; the machine report goes to `*machine` when given.
int cmd_analyze(std::string_view text, const AnalyzeOptions& opts, std::ostream& out, std::ostream& err,
                std::string* machine = nullptr);
int cmd_consistency(std::string_view text, std::ostream& out, std::ostream& err);
/// Justification chains of the top-level conflicts only.
int cmd_explain(std::string_view text, const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);

struct SatOptions
{
  bool core = false;
  std::optional<std::string> assumptions; // contents of the --assume file
};

int cmd_sat(std::string_view dimacs, const SatOptions& opts, std::ostream& out, std::ostream& err);

} // namespace confres
