#include "smg/finite_game.hpp"

#include <cassert>

namespace smg {

Thresholds thresholds(int h) {
  if (h < 3 || h % 2 == 0) throw std::invalid_argument("thresholds: h must be odd and >= 3");
  BigInt two_h = BigInt(1) << h;
  Thresholds th;
  th.h = h;
  th.M1 = Rational(1) + Rational(BigInt(1), two_h - 1);
  th.m1 = Rational(1);
  th.M2 = Rational(3, 2);
  th.m2 = Rational(1) + Rational(BigInt(1), BigInt(1) << ((h - 1) / 2));
  assert(th.M1 == leaf_capital(h));
  return th;
}

Rational leaf_capital(int h) {
  BigInt two_h = BigInt(1) << h;
  return Rational(two_h, two_h - 1);
}

const char* target_name(Target t) {
  switch (t) {
    case Target::T:
      return "t";
    case Target::T0:
      return "t0";
    case Target::T1:
      return "t1";
  }
  return "?";
}

std::optional<Target> target_from_name(const std::string& s) {
  if (s == "t") return Target::T;
  if (s == "t0") return Target::T0;
  if (s == "t1") return Target::T1;
  return std::nullopt;
}

GameState::GameState(int h, int root_parity, Valuation t, Valuation t0, Valuation t1)
    : h_(h), root_parity_(root_parity), t_(std::move(t)), t0_(std::move(t0)), t1_(std::move(t1)) {}

GameState GameState::fresh(int h, int root_parity, Rational a0_root, Rational a1_root) {
  if (h < 3 || h % 2 == 0) throw std::invalid_argument("GameState: h must be odd and >= 3");
  std::size_t offset = static_cast<std::size_t>(root_parity % 2);
  return GameState(
      h, root_parity % 2,
      Valuation(Role::Full, offset, h, Valuation::RootRule::ExactlyOne),
      Valuation(Role::Even, offset, h, Valuation::RootRule::AtMostOne, std::move(a0_root)),
      Valuation(Role::Odd, offset, h, Valuation::RootRule::AtMostOne, std::move(a1_root)));
}

const Valuation& GameState::valuation(Target tgt) const {
  switch (tgt) {
    case Target::T:
      return t_;
    case Target::T0:
      return t0_;
    case Target::T1:
      return t1_;
  }
  throw std::logic_error("bad target");
}

Target GameState::bettor_at(std::size_t local_depth) const {
  return bets_at(Role::Odd, root_parity_ + local_depth) ? Target::T1 : Target::T0;
}

GameState GameState::submit(Mover mover, std::vector<Assignment> assignments,
                            std::vector<LabelAttach> labels, std::string phase_note) const {
  std::vector<ValueAssign> for_t, for_t0, for_t1;
  for (const auto& a : assignments) {
    if (mover == Mover::M && a.target != Target::T)
      throw GameError(ViolationKind::Structure, a.node, "M may only write t");
    if (mover == Mover::A && a.target == Target::T)
      throw GameError(ViolationKind::Structure, a.node, "A may only write t0/t1");
    switch (a.target) {
      case Target::T:
        for_t.push_back({a.node, a.value});
        break;
      case Target::T0:
        for_t0.push_back({a.node, a.value});
        break;
      case Target::T1:
        for_t1.push_back({a.node, a.value});
        break;
    }
  }
  if (mover == Mover::A && !labels.empty())
    throw GameError(ViolationKind::Label, labels.front().leaf, "only M attaches labels");
  for (const auto& l : labels) {
    if (l.label != 1 && l.label != 2)
      throw GameError(ViolationKind::Label, l.leaf, "label must be 1 or 2");
    if (l.leaf.depth() != static_cast<std::size_t>(h_))
      throw GameError(ViolationKind::Label, l.leaf, "labels attach to leaves only");
    auto it = labels_.find(l.leaf);
    if (it != labels_.end() && it->second != l.label)
      throw GameError(ViolationKind::Label, l.leaf, "label is write-once");
    if (it != labels_.end())
      throw GameError(ViolationKind::Label, l.leaf, "leaf already labeled");
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i].leaf == labels[j].leaf)
        throw GameError(ViolationKind::Label, labels[i].leaf, "duplicate label in one move");

  GameState next = *this;
  if (!for_t.empty()) next.t_ = t_.with_increase(for_t);
  if (!for_t0.empty()) next.t0_ = t0_.with_increase(for_t0);
  if (!for_t1.empty()) next.t1_ = t1_.with_increase(for_t1);
  for (const auto& l : labels) next.labels_[l.leaf] = l.label;
  next.log_.push_back({mover, std::move(assignments), std::move(labels), std::move(phase_note)});
  return next;
}

std::optional<GameError> GameState::check(Mover mover, const std::vector<Assignment>& assignments,
                                          const std::vector<LabelAttach>& labels) const {
  try {
    (void)submit(mover, assignments, labels);
  } catch (const GameError& e) {
    return e;
  }
  return std::nullopt;
}

Rational GameState::path_max(const NodeId& node) const {
  Rational m(0);
  for (std::size_t d = 0; d <= node.depth(); ++d) {
    NodeId p = node.prefix(d);
    m = std::max({m, t0_.get(p), t1_.get(p)});
  }
  return m;
}

LeafStatus GameState::leaf_status(const NodeId& leaf) const {
  if (leaf.depth() != static_cast<std::size_t>(h_))
    throw std::logic_error("leaf_status: node is not a leaf");
  auto it = labels_.find(leaf);
  if (it == labels_.end()) return {LeafStatus::Kind::Unlabeled, 0};
  int label = it->second;
  Thresholds th = thresholds(h_);
  if (path_max(leaf) > th.m(label)) return {LeafStatus::Kind::Discredited, label};
  // Non-strict on M's side: the strategy places exactly M_i.
  if (t_.get(leaf) >= th.M(label)) return {LeafStatus::Kind::Winning, label};
  return {LeafStatus::Kind::Pending, label};
}

std::optional<NodeId> GameState::current_winner() const {
  for (const auto& [leaf, label] : labels_) {  // (depth, path) order = left to right
    if (leaf_status(leaf).kind == LeafStatus::Kind::Winning) return leaf;
  }
  return std::nullopt;
}

Verdict GameState::referee_final() const {
  auto w = current_winner();
  if (!w) return {false, NodeId(), 0};
  return {true, *w, labels_.at(*w)};
}

std::vector<NodeId> GameState::all_leaves() const {
  std::vector<NodeId> out;
  std::size_t n = std::size_t(1) << h_;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string bits(h_, '0');
    for (int b = 0; b < h_; ++b)
      if (i & (std::size_t(1) << (h_ - 1 - b))) bits[b] = '1';
    out.push_back(NodeId(bits));
  }
  return out;
}

}  // namespace smg
