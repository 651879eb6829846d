#pragma once

#include "confres/goals.hpp"
#include "confres/possible_worlds.hpp"
#include "confres/strategy.hpp"
#include "confres/tseitin.hpp"
#include "confres/world_model.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace confres
{

/// Reserved pseudo-atom blamed when a conflict does not depend on evidence.
inline const EntityId world_atom = "world";

/// B promises that its action satisfies `constraint` at `step` (or at every
/// step when unset). The constraint is propositional over B's action names.
struct Commitment
{
  std::optional<unsigned> step;
  Formula constraint;

  friend bool operator==(const Commitment&, const Commitment&) = default;
};

/// Scripted stand-in for agent B's side of the resolution protocol.
struct PeerModel
{
  std::vector<Evidence> truths;            // shared at C1
  std::vector<Commitment> commitments;     // revealed at C2
  bool adoptable = false;                  // adopts A's goals at C3
  GoalBase goals_b;                        // B's goals as A believes them
  std::map<GoalSet, std::uint64_t> combined; // C4 weight table, additive fallback
  std::vector<EntityId> trust;             // most trusted first

  friend bool operator==(const PeerModel&, const PeerModel&) = default;
};

struct Problem
{
  WorldModel world;
  unsigned horizon = 0;
  StrategyMode mode = StrategyMode::Sequence;
  std::uint64_t budget = default_strategy_budget;
  int max_level = 4;
  std::vector<Evidence> evidences;
  std::vector<Formula> facts;
  GoalBase goals_a;
  PeerModel peer;
};

/// What A currently believes; C1 and C2 extend it.
struct InformationBase
{
  std::vector<Evidence> evidences;
  std::vector<Formula> facts;
  std::vector<Commitment> commitments;
  std::vector<EntityId> discarded;

  friend bool operator==(const InformationBase&, const InformationBase&) = default;
};

/// Goal bases; C3 extends B's, C4 fixes a shared goal set.
struct GoalState
{
  GoalBase a;
  GoalBase b;
  std::optional<GoalSet> agreed;

  friend bool operator==(const GoalState&, const GoalState&) = default;
};

struct ConflictCause
{
  std::vector<EntityId> atoms;     // core and contested, sorted
  std::vector<EntityId> core;      // minimal set needed with the witness
  std::vector<EntityId> contested; // outside atoms contradicting the core
  GoalSet checked;                 // Φ_A ∪ Φ_B
  GoalSet violated;                // goals false on the witness run
  Run witness;
  std::size_t group = 0;
  std::string group_name;
  std::string candidate;  // (δ_A, δ'_B)
  std::string recombined; // (δ_A, δ_B)
  /// Timed formula fixing the joint strategy and the witness's Env choices,
  /// plus its initial state when the cause is `world`.
  Formula witness_constraint;
};

struct TraceEvent
{
  std::string kind;
  int depth = 0;
  int level = 0;
  std::vector<std::pair<std::string, std::string>> fields;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct Candidate
{
  std::size_t a = 0; // index into the A strategies
  std::size_t b = 0; // index into the B strategies
  GoalSet phi_a;
};

/// Everything computed for one information base: possible worlds, strategy
/// spaces and a lazily filled table of goals achieved by each joint strategy
/// in each group.
class Attempt
{
public:
  Attempt(const Problem& p, const InformationBase& info, const GoalState& goals);
  ~Attempt();
  Attempt(const Attempt&) = delete;
  Attempt& operator=(const Attempt&) = delete;

  [[nodiscard]] const Problem& problem() const { return _p; }
  [[nodiscard]] const InformationBase& info() const { return _info; }
  [[nodiscard]] const GoalState& goals() const { return _goals; }
  [[nodiscard]] const PossibleWorldSet& worlds() const { return _worlds; }
  [[nodiscard]] const std::vector<Strategy>& strategies(Role r) const { return r == Role::A ? _sa : _sb; }
  /// B strategies compatible with the accepted commitments.
  [[nodiscard]] const std::vector<std::size_t>& admissible_b() const { return _admissible_b; }
  [[nodiscard]] JointStrategy joint(std::size_t a, std::size_t b) const { return { _sa[a], _sb[b] }; }
  [[nodiscard]] const Formula& goal_formula(const GoalId& id) const;

  /// Goals achieved on every run of (a, b) in group g.
  const GoalSet& achieved(std::size_t g, std::size_t a, std::size_t b);
  /// True if (a, b) has no run in group g.
  bool vacuous(std::size_t g, std::size_t a, std::size_t b);
  [[nodiscard]] std::uint64_t solver_calls() const { return _solver_calls; }

private:
  friend std::vector<GoalSet> goals_b_max(Attempt& at, std::size_t group);
  friend std::vector<std::pair<std::size_t, std::size_t>> strat_b(Attempt& at, std::size_t group);

  struct GroupCnf;
  struct Entry
  {
    GoalSet achieved;
    bool vacuous = false;
  };
  const Entry& entry(std::size_t g, std::size_t a, std::size_t b);

  const Problem& _p;
  InformationBase _info;
  GoalState _goals;
  PossibleWorldSet _worlds;
  std::vector<Strategy> _sa;
  std::vector<Strategy> _sb;
  std::vector<std::size_t> _admissible_b;
  std::map<GoalId, Formula> _goal_formulas;
  std::vector<std::unique_ptr<GroupCnf>> _cnf;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Entry> _table;
  std::uint64_t _solver_calls = 0;
  // per-group results that only depend on the table
  std::map<std::size_t, std::vector<GoalSet>> _max_b;
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> _strat_b;
};

/// Φ_A^max over all groups (A's goals achieved in every group).
std::vector<GoalSet> goals_a_max(Attempt& at);
/// Φ_B^max for one group.
std::vector<GoalSet> goals_b_max(Attempt& at, std::size_t group);

/// Δ_A. In coalition mode (after C4) the joint strategies winning the agreed
/// goals in every group.
std::vector<Candidate> strat_a(Attempt& at);
/// Δ_B for one group, as (a, b) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> strat_b(Attempt& at, std::size_t group);

/// First failing recombination of `cand` with B's maximal strategies, in group
/// order then strategy order; nullopt only after every check passed.
std::optional<ConflictCause> test_if_not_winning(Attempt& at, const Candidate& cand);

/// Minimal set of belief atoms behind the failure of (a, b) on `goals` in
/// group g. Throws Error if (a, b) does in fact win `goals` there.
ConflictCause get_justifications(Attempt& at, std::size_t g, std::size_t a, std::size_t b, const GoalSet& goals);

/// Re-checks a cause: world, facts, the bodies of `atoms`, the witness
/// constraint and the checked goals must be unsatisfiable together.
bool cause_is_sound(const Problem& p, const InformationBase& info, const ConflictCause& cause,
                    const std::vector<EntityId>& atoms);

struct FixResult
{
  InformationBase info;
  GoalState goals;
  bool changed = false;
  std::vector<TraceEvent> events;
};

/// One resolution level applied to every cause (levels 1..4).
FixResult fix_conflict(const std::vector<ConflictCause>& causes, int level, Attempt& at);

/// Each group of `after` implies some group of `before` (checked with the solver).
bool refines(const Problem& p, const PossibleWorldSet& after, const PossibleWorldSet& before);

struct Refinement
{
  int level = 0;
  int depth = 0;
  bool ok = false;
};

struct AnalysisResult
{
  bool conflict = false; // Δ_A empty before any resolution
  bool resolved = false; // final Δ_A non-empty
  int level = 0;         // highest level used on the successful chain
  std::vector<std::pair<JointStrategy, GoalSet>> winning;
  std::vector<ConflictCause> causes; // top-level causes
  PossibleWorldSet worlds;           // top-level possible worlds
  std::optional<GoalSet> agreed;
  std::vector<Refinement> refinements;
  std::vector<TraceEvent> trace;
  InformationBase final_info;
};

/// Conflict search, then the resolution ladder up to p.max_level.
AnalysisResult find_strategy(const Problem& p);

} // namespace confres
