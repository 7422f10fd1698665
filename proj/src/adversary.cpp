#include "smg/adversary.hpp"

#include "smg/strategy.hpp"

namespace smg {

int no_shortcut_sequence(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("no_shortcut_sequence: n >= 1");
  int v2 = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v2;
  }
  return v2 % 2;
}

std::optional<AdversaryConfig::Kind> AdversaryConfig::kind_from_name(const std::string& s) {
  if (s == "passive") return Kind::Passive;
  if (s == "case-a") return Kind::CaseAScripted;
  if (s == "case-b") return Kind::CaseBScripted;
  if (s == "random") return Kind::Random;
  if (s == "pattern") return Kind::Pattern;
  return std::nullopt;
}

const char* AdversaryConfig::kind_name(Kind k) {
  switch (k) {
    case Kind::Passive:
      return "passive";
    case Kind::CaseAScripted:
      return "case-a";
    case Kind::CaseBScripted:
      return "case-b";
    case Kind::Random:
      return "random";
    case Kind::Pattern:
      return "pattern";
  }
  return "?";
}

Adversary::Adversary(AdversaryConfig cfg, int h) : cfg_(std::move(cfg)), h_(h), rng_(cfg_.seed) {}

std::optional<std::vector<Assignment>> Adversary::raise_batch(const GameState& s, Target target,
                                                              const std::vector<ValueAssign>& raises) {
  auto batch = minimal_raise(s.valuation(target), raises);
  if (!batch || batch->empty()) return std::nullopt;
  std::vector<Assignment> out;
  out.reserve(batch->size());
  for (const auto& va : *batch) out.push_back({target, va.node, va.value});
  if (s.check(Mover::A, out)) return std::nullopt;
  return out;
}

std::optional<std::vector<Assignment>> Adversary::next(const GameState& s) {
  if (halted_) return std::nullopt;
  std::optional<std::vector<Assignment>> move;
  switch (cfg_.kind) {
    case AdversaryConfig::Kind::Passive:
      break;
    case AdversaryConfig::Kind::CaseAScripted:
      move = next_case_a(s);
      break;
    case AdversaryConfig::Kind::CaseBScripted:
      move = next_case_b(s);
      break;
    case AdversaryConfig::Kind::Random:
      move = next_random(s);
      break;
    case AdversaryConfig::Kind::Pattern:
      move = next_pattern(s);
      break;
  }
  if (!move) {
    halted_ = true;
    return std::nullopt;
  }
  ++moves_made_;
  return move;
}

std::optional<std::vector<Assignment>> Adversary::next_case_a(const GameState& s) {
  if (moves_made_ >= 1) return std::nullopt;
  SelectedPath sel = strategy::all_left(h_);
  NodeId target_node = sel.A(cfg_.target_index);
  Rational v = Rational(1) + cfg_.delta;
  // Infeasible for a role that is non-betting all the way up (its value at the
  // target is pinned to the root's): raise_batch returns nullopt, we halt.
  return raise_batch(s, cfg_.role, {{target_node, v}});
}

std::optional<std::vector<Assignment>> Adversary::next_case_b(const GameState& s) {
  int j = 3 + 2 * script_step_;
  if (j > h_) return std::nullopt;
  ++script_step_;
  SelectedPath sel = strategy::all_left(h_);
  Target rb = s.bettor_at(j - 1);
  Rational v = Rational(1) + cfg_.delta;
  // The whole subtree above B_j goes to 1+delta; upward propagation along the
  // selected path is the minimal averaging chain.
  std::vector<ValueAssign> raises;
  NodeId top = sel.B(j);
  for (std::size_t d = top.depth(); d <= static_cast<std::size_t>(h_); ++d) {
    for (const NodeId& leaf : s.all_leaves()) {
      NodeId node = leaf.prefix(d);
      if (top.is_prefix_of(node)) raises.push_back({node, v});
    }
  }
  // Dedup (prefix enumeration above repeats inner nodes).
  std::map<NodeId, Rational> uniq;
  for (auto& r : raises) uniq[r.node] = r.value;
  raises.clear();
  for (auto& [n, r] : uniq) raises.push_back({n, r});
  return raise_batch(s, rb, raises);
}

std::optional<std::vector<Assignment>> Adversary::next_random(const GameState& s) {
  if (moves_made_ >= cfg_.budget) return std::nullopt;
  for (int tries = 0; tries < 200; ++tries) {
    Target target = (rng_() & 1) ? Target::T1 : Target::T0;
    std::size_t depth = 1 + rng_() % h_;
    std::string bits;
    for (std::size_t i = 0; i < depth; ++i) bits += (rng_() & 1) ? '1' : '0';
    NodeId node(bits);
    Rational v(static_cast<long long>(1 + rng_() % 16), 8);  // grid 1/8 .. 2
    if (v <= s.valuation(target).get(node)) continue;
    auto move = raise_batch(s, target, {{node, v}});
    if (move) return move;
  }
  return std::nullopt;
}

std::optional<std::vector<Assignment>> Adversary::next_pattern(const GameState& s) {
  if (moves_made_ >= cfg_.budget) return std::nullopt;
  std::uint64_t total = std::uint64_t(1) << h_;
  while (script_step_ < static_cast<int>(total)) {
    std::uint64_t k = static_cast<std::uint64_t>(script_step_) + 1;  // 1-indexed leaf
    ++script_step_;
    std::string bits(h_, '0');
    for (int b = 0; b < h_; ++b)
      if ((k - 1) & (std::uint64_t(1) << (h_ - 1 - b))) bits[b] = '1';
    NodeId leaf(bits);
    // Pattern bit 0: the supermartingale betting at the leaf's parent level
    // (depth h-1); bit 1: the other one.
    Target role = s.bettor_at(h_ - 1);
    if (no_shortcut_sequence(k) == 1)
      role = role == Target::T1 ? Target::T0 : Target::T1;
    Rational v = Rational(1) + cfg_.delta;
    auto move = raise_batch(s, role, {{leaf, v}});
    if (move) return move;
    // Already at or above the target there; skip to the next leaf.
  }
  return std::nullopt;
}

}  // namespace smg
