#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smg/errors.hpp"
#include "smg/rational.hpp"
#include "smg/tree.hpp"

namespace smg {

// Probability distribution on the tree, stored as conditional next-bit
// probabilities P(0 | node). Nodes without an entry use the uniform 1/2, so
// mu(x) = mu(x0) + mu(x1) holds by construction.
class Measure {
 public:
  static Measure uniform() { return Measure(); }

  bool is_uniform() const { return cond0_.empty(); }

  void set_cond0(const NodeId& x, Rational p);
  Rational cond(const NodeId& x, int bit) const;

  void set_epsilon(Rational eps) { epsilon_ = std::move(eps); }
  const std::optional<Rational>& epsilon() const { return epsilon_; }

  // Nodes (from the stored table) whose conditional probability fails the
  // epsilon separation bound. Empty when no epsilon is set.
  std::vector<NodeId> separation_failures() const;

 private:
  std::map<NodeId, Rational> cond0_;
  std::optional<Rational> epsilon_;
};

struct Violation {
  enum class What { BettingInequality, ChildrenUnequal, RootValue, BeyondHeight };
  What what;
  NodeId node;
  std::string detail;
};

struct ValueAssign {
  NodeId node;
  Rational value;
};

// A parity-role-tagged supermartingale valuation on a binary tree, stored
// sparsely. Unstored nodes take the default extension: children of a stored
// non-betting node inherit its value, children of a betting node default to 0.
// Snapshot semantics: all mutators return a new valuation.
class Valuation {
 public:
  enum class RootRule { ExactlyOne, AtMostOne };

  Valuation(Role role, std::size_t root_offset = 0, std::optional<int> height = std::nullopt,
            RootRule rule = RootRule::ExactlyOne, Rational root_value = Rational(1));

  Role role() const { return role_; }
  std::size_t root_offset() const { return root_offset_; }
  const std::optional<int>& height() const { return height_; }
  RootRule root_rule() const { return root_rule_; }

  // True iff this valuation may change values below node x.
  bool node_bets(const NodeId& x) const { return bets_at(role_, root_offset_ + x.depth()); }

  // Stored value or default-extension value.
  Rational get(const NodeId& x) const;

  const std::map<NodeId, Rational>& stored() const { return values_; }

  // Checks supermartingale / parity constraints on the stored support and its
  // one-step closure. With martingale_exact, betting nodes require equality.
  std::vector<Violation> validate(const Measure& mu = Measure::uniform(),
                                  bool martingale_exact = false) const;

  // Monotone batch update; throws GameError on decrease or on any structural
  // violation in the result. The input valuation is unmodified.
  Valuation with_increase(const std::vector<ValueAssign>& assigns) const;

  // Non-throwing probe of with_increase.
  std::optional<GameError> check_increase(const std::vector<ValueAssign>& assigns) const;

  // Unchecked store, for internal repair machinery and trusted loaders.
  Valuation with_raw(const std::vector<ValueAssign>& assigns) const;

  // Stored nodes in deterministic (depth, path) order.
  std::vector<ValueAssign> serialize() const;

 private:
  void validate_node(const NodeId& x, const Measure& mu, bool martingale_exact,
                     std::vector<Violation>& out) const;

  Role role_;
  std::size_t root_offset_;
  std::optional<int> height_;
  RootRule root_rule_;
  std::map<NodeId, Rational> values_;  // always contains the root
};

// Descends from `from` to depth `to_depth`, at each node following the child
// where the betting valuation does not increase (ties prefer bit 0). Along the
// returned path neither valuation exceeds its value at `from`. Requires that
// at every node at most one of the two valuations bets.
NodeId min_nonincreasing_path(const Valuation& a, const Valuation& b, const NodeId& from,
                              std::size_t to_depth);

// Computes the minimal monotone batch that raises `val` to the target values
// and restores all structural constraints (equality chains through non-betting
// ancestors, exact averaging at betting ancestors). Returns nullopt when no
// valid batch exists (e.g. the root would have to exceed its cap).
std::optional<std::vector<ValueAssign>> minimal_raise(const Valuation& val,
                                                      const std::vector<ValueAssign>& targets,
                                                      const Measure& mu = Measure::uniform());

}  // namespace smg
