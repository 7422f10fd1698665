#include "smg/valuation.hpp"

#include <algorithm>
#include <set>

namespace smg {

void Measure::set_cond0(const NodeId& x, Rational p) {
  if (p > Rational(1)) throw std::invalid_argument("Measure: conditional probability > 1");
  cond0_[x] = std::move(p);
}

Rational Measure::cond(const NodeId& x, int bit) const {
  Rational p0(1, 2);
  if (auto it = cond0_.find(x); it != cond0_.end()) p0 = it->second;
  return bit ? Rational(1) - p0 : p0;
}

std::vector<NodeId> Measure::separation_failures() const {
  std::vector<NodeId> bad;
  if (!epsilon_) return bad;
  for (const auto& [node, p0] : cond0_) {
    if (p0 <= *epsilon_ || Rational(1) - p0 <= *epsilon_) bad.push_back(node);
  }
  return bad;
}

Valuation::Valuation(Role role, std::size_t root_offset, std::optional<int> height, RootRule rule,
                     Rational root_value)
    : role_(role), root_offset_(root_offset), height_(height), root_rule_(rule) {
  if (rule == RootRule::ExactlyOne && root_value != Rational(1))
    throw std::invalid_argument("Valuation: pinned root must be 1");
  if (rule == RootRule::AtMostOne && root_value > Rational(1))
    throw std::invalid_argument("Valuation: capped root must be <= 1");
  values_[NodeId()] = std::move(root_value);
}

Rational Valuation::get(const NodeId& x) const {
  if (height_ && x.depth() > static_cast<std::size_t>(*height_))
    throw std::logic_error("Valuation: node beyond tree height");
  auto it = values_.find(x);
  if (it != values_.end()) return it->second;
  // Walk up to the nearest stored ancestor, then extend defaults downward.
  std::size_t d = x.depth();
  NodeId anc = x;
  while (true) {
    anc = anc.parent();
    it = values_.find(anc);
    if (it != values_.end()) break;
  }
  // Stored betting ancestor: everything below that is unstored defaults to 0.
  // Non-betting chain: the value is inherited one level; after that the child
  // node's own betting status decides again.
  Rational v = it->second;
  for (std::size_t level = anc.depth(); level < d; ++level) {
    if (bets_at(role_, root_offset_ + level)) return Rational(0);
    // inherit v and continue
  }
  return v;
}

void Valuation::validate_node(const NodeId& x, const Measure& mu, bool martingale_exact,
                              std::vector<Violation>& out) const {
  if (height_ && x.depth() >= static_cast<std::size_t>(*height_)) return;  // leaves: no children
  Rational v = get(x);
  Rational v0 = get(x.child(0));
  Rational v1 = get(x.child(1));
  if (node_bets(x)) {
    Rational need = v0 * mu.cond(x, 0) + v1 * mu.cond(x, 1);
    if (martingale_exact ? (v != need) : (v < need)) {
      out.push_back({Violation::What::BettingInequality, x,
                     "value " + v.str() + " vs required " + need.str()});
    }
  } else {
    if (v0 != v || v1 != v) {
      out.push_back({Violation::What::ChildrenUnequal, x,
                     "children " + v0.str() + ", " + v1.str() + " must equal " + v.str()});
    }
  }
}

std::vector<Violation> Valuation::validate(const Measure& mu, bool martingale_exact) const {
  std::vector<Violation> out;
  const Rational& root = values_.at(NodeId());
  if (root_rule_ == RootRule::ExactlyOne && root != Rational(1))
    out.push_back({Violation::What::RootValue, NodeId(), "root must be exactly 1"});
  if (root_rule_ == RootRule::AtMostOne && root > Rational(1))
    out.push_back({Violation::What::RootValue, NodeId(), "root must be <= 1"});

  std::set<NodeId> to_check;
  for (const auto& [node, value] : values_) {
    if (height_ && node.depth() > static_cast<std::size_t>(*height_)) {
      out.push_back({Violation::What::BeyondHeight, node, "stored node beyond tree height"});
      continue;
    }
    to_check.insert(node);
    if (!node.is_root()) to_check.insert(node.parent());
  }
  for (const NodeId& x : to_check) validate_node(x, mu, martingale_exact, out);
  return out;
}

Valuation Valuation::with_raw(const std::vector<ValueAssign>& assigns) const {
  Valuation next = *this;
  for (const auto& a : assigns) next.values_[a.node] = a.value;
  return next;
}

Valuation Valuation::with_increase(const std::vector<ValueAssign>& assigns) const {
  for (const auto& a : assigns) {
    Rational cur = get(a.node);
    if (a.value < cur)
      throw GameError(ViolationKind::Monotonicity, a.node,
                      "decrease from " + cur.str() + " to " + a.value.str());
    if (a.node.is_root()) {
      if (root_rule_ == RootRule::ExactlyOne && a.value != Rational(1))
        throw GameError(ViolationKind::Structure, a.node, "root is pinned at 1");
      if (root_rule_ == RootRule::AtMostOne && a.value > Rational(1))
        throw GameError(ViolationKind::Structure, a.node, "root is capped at 1");
    }
  }
  Valuation next = with_raw(assigns);
  auto violations = next.validate();
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw GameError(ViolationKind::Structure, v.node, v.detail);
  }
  return next;
}

std::optional<GameError> Valuation::check_increase(const std::vector<ValueAssign>& assigns) const {
  try {
    (void)with_increase(assigns);
  } catch (const GameError& e) {
    return e;
  }
  return std::nullopt;
}

std::vector<ValueAssign> Valuation::serialize() const {
  std::vector<ValueAssign> out;
  out.reserve(values_.size());
  for (const auto& [node, value] : values_) out.push_back({node, value});
  return out;  // std::map iterates in (depth, path) order already
}

NodeId min_nonincreasing_path(const Valuation& a, const Valuation& b, const NodeId& from,
                              std::size_t to_depth) {
  NodeId cur = from;
  while (cur.depth() < to_depth) {
    bool a_bets = a.node_bets(cur);
    bool b_bets = b.node_bets(cur);
    if (a_bets && b_bets)
      throw std::logic_error("min_nonincreasing_path: both valuations bet at a node");
    int bit = 0;
    if (a_bets || b_bets) {
      const Valuation& bettor = a_bets ? a : b;
      bit = bettor.get(cur.child(0)) <= bettor.get(cur.child(1)) ? 0 : 1;
    }
    cur = cur.child(bit);
  }
  return cur;
}

std::optional<std::vector<ValueAssign>> minimal_raise(const Valuation& val,
                                                      const std::vector<ValueAssign>& targets,
                                                      const Measure& mu) {
  std::map<NodeId, Rational> batch;
  for (const auto& t : targets) {
    Rational cur = val.get(t.node);
    if (t.value > cur) batch[t.node] = t.value;  // already-satisfied targets are no-ops
  }

  // Repair loop: apply the batch, look for structural violations, and fix each
  // by the least monotone adjustment until the valuation is clean again.
  for (int iter = 0; iter < 100000; ++iter) {
    Valuation cand = val.with_raw([&] {
      std::vector<ValueAssign> v;
      for (const auto& [n, r] : batch) v.push_back({n, r});
      return v;
    }());
    auto violations = cand.validate(mu);
    if (violations.empty()) {
      std::vector<ValueAssign> out;
      for (const auto& [n, r] : batch)
        if (r != val.get(n)) out.push_back({n, r});
      return out;
    }
    const Violation& v = violations.front();
    switch (v.what) {
      case Violation::What::BettingInequality: {
        Rational need =
            cand.get(v.node.child(0)) * mu.cond(v.node, 0) + cand.get(v.node.child(1)) * mu.cond(v.node, 1);
        if (v.node.is_root()) {
          if (val.root_rule() == Valuation::RootRule::AtMostOne && need <= Rational(1))
            batch[v.node] = need;
          else
            return std::nullopt;
        } else {
          batch[v.node] = need;
        }
        break;
      }
      case Violation::What::ChildrenUnequal: {
        Rational m = std::max({cand.get(v.node), cand.get(v.node.child(0)), cand.get(v.node.child(1))});
        if (cand.get(v.node) < m) {
          if (v.node.is_root() &&
              !(val.root_rule() == Valuation::RootRule::AtMostOne && m <= Rational(1)))
            return std::nullopt;
          batch[v.node] = m;
        }
        // Only stored children can disagree with the new parent; unstored ones
        // re-inherit through the default extension.
        for (int bit : {0, 1}) {
          NodeId c = v.node.child(bit);
          if (cand.stored().count(c) && cand.get(c) < m) batch[c] = m;
        }
        break;
      }
      case Violation::What::RootValue:
        return std::nullopt;
      case Violation::What::BeyondHeight:
        return std::nullopt;
    }
  }
  return std::nullopt;  // did not converge; treat as infeasible
}

}  // namespace smg
