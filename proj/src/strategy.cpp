#include "smg/strategy.hpp"

#include <map>

namespace smg {
namespace strategy {

SelectedPath all_left(int h) { return SelectedPath{h}; }

namespace {

// Sets `capital` on each leaf in `leaves`, plus the exact leaf-descendant
// averages on every proper ancestor below the root. Skips assignments that do
// not raise anything (already-funded leaves keep their values).
std::vector<Assignment> funding_batch(const GameState& s, const std::vector<NodeId>& leaves,
                                      const Rational& capital) {
  int h = s.h();
  std::map<NodeId, long long> leaf_count;  // funded leaves under each node
  for (const NodeId& leaf : leaves) {
    for (std::size_t d = 1; d <= leaf.depth(); ++d) leaf_count[leaf.prefix(d)] += 1;
  }
  std::vector<Assignment> batch;
  for (const auto& [node, count] : leaf_count) {
    BigInt below = BigInt(1) << (h - static_cast<int>(node.depth()));
    Rational value = capital * Rational(BigInt(count), below);
    if (value > s.t().get(node)) batch.push_back({Target::T, node, value});
  }
  return batch;
}

std::vector<NodeId> leaves_under(const GameState& s, const NodeId& top) {
  std::vector<NodeId> out;
  for (const NodeId& leaf : s.all_leaves())
    if (top.is_prefix_of(leaf)) out.push_back(leaf);
  return out;
}

}  // namespace

GameState first_move(const GameState& s) {
  if (s.phase() != Phase::Init) throw std::logic_error("first_move: game already opened");
  SelectedPath sel = all_left(s.h());
  Rational c = leaf_capital(s.h());
  std::vector<NodeId> funded;
  for (int j = 3; j <= s.h(); j += 2) {
    for (const NodeId& leaf : leaves_under(s, sel.B(j))) funded.push_back(leaf);
  }
  std::vector<LabelAttach> labels;
  for (const NodeId& leaf : funded) labels.push_back({leaf, 1});
  GameState next = s.submit(Mover::M, funding_batch(s, funded, c), labels, "first");
  next.set_phase(Phase::Stage1);
  return next;
}

CaseResult detect_case(const GameState& s, const SelectedPath& sel) {
  if (s.phase() != Phase::Stage1) return {CaseResult::Kind::None, 0};
  for (int i = 1; i <= s.h(); ++i) {
    NodeId a = sel.A(i);
    if (s.t0().get(a) > Rational(1) || s.t1().get(a) > Rational(1))
      return {CaseResult::Kind::CaseA, i};
  }
  bool any_label = false;
  for (const auto& [leaf, label] : s.labels()) {
    if (label != 1) continue;
    any_label = true;
    if (s.leaf_status(leaf).kind != LeafStatus::Kind::Discredited)
      return {CaseResult::Kind::None, 0};
  }
  if (!any_label) return {CaseResult::Kind::None, 0};
  // Case B premise (the paper's argument; its failure means an engine bug):
  // at every B_j, j odd >= 3, the supermartingale betting at A_{j-1} must
  // exceed 1. The contrary is covered by Case A, which is checked first.
  for (int j = 3; j <= s.h(); j += 2) {
    Target rb = s.bettor_at(j - 1);
    if (!(s.valuation(rb).get(sel.B(j)) > Rational(1)))
      throw std::logic_error("detect_case: Case B premise fails at B_" + std::to_string(j));
  }
  return {CaseResult::Kind::CaseB, 0};
}

GameState case_a_move(const GameState& s, const SelectedPath& sel) {
  Rational c = leaf_capital(s.h());
  std::vector<NodeId> funded;
  std::vector<LabelAttach> labels;
  NodeId spine_leaf = sel.A(s.h());
  for (const NodeId& leaf : s.all_leaves()) {
    if (leaf == spine_leaf) continue;
    funded.push_back(leaf);
    if (!s.labels().count(leaf)) labels.push_back({leaf, 1});
  }
  GameState next = s.submit(Mover::M, funding_batch(s, funded, c), labels, "case-a");
  next.set_phase(Phase::DoneCaseA);
  return next;
}

GameState case_b_move(const GameState& s, const SelectedPath& sel) {
  std::vector<NodeId> funded = leaves_under(s, sel.B(1));
  std::vector<LabelAttach> labels;
  for (const NodeId& leaf : funded) {
    if (!s.labels().count(leaf)) labels.push_back({leaf, 2});
  }
  GameState next = s.submit(Mover::M, funding_batch(s, funded, Rational(3, 2)), labels, "case-b");
  next.set_phase(Phase::DoneCaseB);
  return next;
}

LowerBounds path_lower_bounds(int h, int root_parity) {
  if (h < 3 || h % 2 == 0) throw std::invalid_argument("path_lower_bounds: bad h");
  LowerBounds lb;
  lb.root_bettor = bets_at(Role::Odd, root_parity % 2) ? Target::T1 : Target::T0;
  Rational bound(0);  // at A_h
  for (int j = h; j >= 2; --j) {
    if (j % 2 == 1) bound = avg(bound, Rational(1));  // the root bettor bets at A_{j-1}
    lb.along.push_back(bound);                        // value at A_{j-1}
  }
  lb.b1_cap = Rational(2) - bound;
  return lb;
}

GameState react(const GameState& s) {
  if (s.phase() == Phase::Init) return first_move(s);
  if (s.phase() != Phase::Stage1) return s;
  SelectedPath sel = all_left(s.h());
  CaseResult r = detect_case(s, sel);
  switch (r.kind) {
    case CaseResult::Kind::CaseA:
      return case_a_move(s, sel);
    case CaseResult::Kind::CaseB:
      return case_b_move(s, sel);
    case CaseResult::Kind::None:
      return s;
  }
  return s;
}

}  // namespace strategy
}  // namespace smg
