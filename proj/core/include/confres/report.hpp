#pragma once

#include "confres/engine.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confres
{

/// One belief atom behind a conflict and why A held it.
struct JustificationLink
{
  EntityId atom;
  std::string role; // "core" or "contested"
  std::string body;
  std::string provenance;
  friend bool operator==(const JustificationLink&, const JustificationLink&) = default;
};

struct CauseReport
{
  std::string group;
  std::string candidate;
  std::string recombined;
  GoalSet checked;
  GoalSet violated;
  std::vector<EntityId> atoms;
  std::vector<JustificationLink> chain;
  std::vector<std::string> witness_states;  // "!a b ..."
  std::vector<std::string> witness_actions; // "A:stay B:go Env:idle"
  friend bool operator==(const CauseReport&, const CauseReport&) = default;
};

struct WorldReport
{
  std::string name;
  std::vector<EntityId> members;
  friend bool operator==(const WorldReport&, const WorldReport&) = default;
};

struct WinningReport
{
  std::string strategy;
  GoalSet goals;
  friend bool operator==(const WinningReport&, const WinningReport&) = default;
};

struct RefinementReport
{
  int level = 0;
  int depth = 0;
  bool ok = false;
  friend bool operator==(const RefinementReport&, const RefinementReport&) = default;
};

/// Serializable outcome of one analysis.
struct TraceReport
{
  int schema = 1;
  std::string scenario;
  unsigned horizon = 0;
  std::string mode;
  int max_level = 0;
  bool conflict = false;
  bool resolved = false;
  int level = 0;
  std::optional<GoalSet> agreed;
  std::vector<WorldReport> worlds;
  std::vector<EntityId> degenerate;
  std::vector<CauseReport> causes;
  std::vector<WinningReport> winning;
  std::vector<RefinementReport> refinements;
  std::vector<EntityId> discarded;
  std::vector<TraceEvent> trace;
  friend bool operator==(const TraceReport&, const TraceReport&) = default;
};

TraceReport make_report(const std::string& scenario, const Problem& p, const AnalysisResult& r);

/// Pretty-printed JSON, keys in a fixed order.
std::string to_json(const TraceReport& r);
/// Inverse of to_json. Throws Error on malformed input or a schema mismatch.
TraceReport report_from_json(std::string_view text);

/// Plain-text summary for terminals.
std::string render_text(const TraceReport& r);

} // namespace confres
