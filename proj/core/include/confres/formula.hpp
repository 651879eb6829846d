#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace confres
{

/// Thrown when an input violates an operation's precondition.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

using EntityId = std::string;
using EntityGroup = std::set<EntityId>;

/// Core operators are Bottom, Var, Implies, Belief, Next, Prev, Until and
/// Since. The rest are sugar that expand_derived() rewrites into the core.
enum class Op
{
  Bottom,
  Var,
  Implies,
  Belief,
  Next,
  Prev,
  Until,
  Since,
  // sugar
  Top,
  Not,
  And,
  Or,
  Iff,
  Globally,
  Finally,
  Historically,
};

bool is_core(Op op);
bool is_temporal(Op op);
bool is_binary(Op op);

class Formula;

namespace detail
{
struct Node;
}

/// Immutable formula tree with shared subterms. Copies are cheap.
class Formula
{
public:
  Formula();

  static Formula bottom();
  static Formula top();
  static Formula var(std::string name);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula belief(EntityGroup group, Formula body);
  static Formula next(Formula body);
  static Formula prev(Formula body);
  static Formula until(Formula lhs, Formula rhs);
  static Formula since(Formula lhs, Formula rhs);
  static Formula negation(Formula body);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula globally(Formula body);
  static Formula finally(Formula body);
  static Formula historically(Formula body);

  /// n-ary helpers; empty conjunction is Top, empty disjunction is Bottom.
  static Formula conj(const std::vector<Formula>& parts);
  static Formula disj(const std::vector<Formula>& parts);

  /// Constant-folding constructors used by the encoders.
  static Formula mk_not(Formula f);
  static Formula mk_and(Formula lhs, Formula rhs);
  static Formula mk_or(Formula lhs, Formula rhs);
  static Formula mk_implies(Formula lhs, Formula rhs);
  static Formula mk_iff(Formula lhs, Formula rhs);

  [[nodiscard]] Op op() const;
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] const EntityGroup& group() const;
  /// Left operand of a binary node, or the body of a unary node.
  [[nodiscard]] const Formula& lhs() const;
  [[nodiscard]] const Formula& rhs() const;
  [[nodiscard]] const Formula& body() const { return lhs(); }
  [[nodiscard]] std::size_t hash() const;
  [[nodiscard]] const void* id() const;

  [[nodiscard]] bool is_bottom() const { return op() == Op::Bottom; }
  [[nodiscard]] bool is_top() const { return op() == Op::Top; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
  explicit Formula(std::shared_ptr<const detail::Node> node);
  static const std::shared_ptr<const detail::Node>& bottom_node();
  static Formula make(Op op, std::string name, EntityGroup group, Formula lhs, Formula rhs);
  std::shared_ptr<const detail::Node> _node;
};

/// Total order for use in ordered containers (structural, not semantic).
bool operator<(const Formula& a, const Formula& b);

struct FormulaHash
{
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Rewrites every sugar node into Bottom/Var/Implies/Belief/X/P/U/S.
Formula expand_derived(const Formula& f);

/// Every entity mentioned in any belief group of `f`.
std::set<EntityId> atoms_of(const Formula& f);

/// Variable names occurring in `f`.
std::set<std::string> variables_of(const Formula& f);

/// e ⊆ f for non-empty groups. Throws Error on an empty group.
bool is_subgroup(const EntityGroup& e, const EntityGroup& f);

bool contains_belief(const Formula& f);
bool contains_temporal(const Formula& f);

/// Classical evaluation of a formula without belief or temporal nodes.
/// Unknown variables read as false.
bool evaluate_propositional(const Formula& f, const std::map<std::string, bool>& assignment);

/// Replaces variables by name. Names absent from `subst` are kept.
Formula substitute(const Formula& f, const std::map<std::string, Formula>& subst);

/// Renders in the textual syntax accepted by parse_formula().
std::string to_string(const Formula& f);

bool is_identifier(const std::string& s);

} // namespace confres
