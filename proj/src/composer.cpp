#include "smg/composer.hpp"

#include <stdexcept>

#include "smg/trace.hpp"

namespace smg {

namespace {

using nlohmann::json;

constexpr int kStepCap = 100000;

json assignments_json(const std::vector<Assignment>& batch) {
  json out = json::array();
  for (const auto& a : batch)
    out.push_back(
        json{{"target", target_name(a.target)}, {"node", a.node.str()}, {"value", a.value.str()}});
  return out;
}

}  // namespace

Session::Session(int initial_h, AdversaryConfig adversary, int max_stages, TraceWriter* trace)
    : max_stages_(max_stages),
      adversary_cfg_(adversary),
      trace_(trace),
      global_t0_(Role::Even, 0, std::nullopt, Valuation::RootRule::AtMostOne),
      global_t1_(Role::Odd, 0, std::nullopt, Valuation::RootRule::AtMostOne) {
  if (max_stages_ < 1) throw std::invalid_argument("Session: max_stages must be >= 1");
  if (trace_)
    trace_->record(json{{"kind", "session"},
                        {"h", initial_h},
                        {"max_stages", max_stages_},
                        {"adversary", AdversaryConfig::kind_name(adversary.kind)},
                        {"delta", adversary.delta.str()},
                        {"seed", adversary.seed},
                        {"budget", adversary.budget}});
  StageRecord root;
  root.index = 0;
  root.level = 0;
  root.h = initial_h;
  root.root_parity = 0;
  root.game = strategy::react(GameState::fresh(initial_h));
  root.adversary = std::make_unique<Adversary>(adversary_cfg_, initial_h);
  if (auto w = root.game.current_winner()) {
    root.candidate = *w;
    root.candidate_label = root.game.labels().at(*w);
  }
  stages_.push_back(std::move(root));
}

std::vector<int> Session::active_chain() const {
  std::vector<int> out;
  int i = 0;
  while (i >= 0 && stages_[i].status == StageRecord::Status::Active) {
    out.push_back(i);
    i = stages_[i].active_child;
  }
  return out;
}

void Session::discard_descendants(int index) {
  int ch = stages_[index].active_child;
  stages_[index].active_child = -1;
  while (ch >= 0) {
    stages_[ch].status = StageRecord::Status::Discarded;
    if (trace_) trace_->record(json{{"kind", "stage-discard"}, {"index", ch}});
    int nxt = stages_[ch].active_child;
    stages_[ch].active_child = -1;
    ch = nxt;
  }
}

void Session::spawn_child(int parent_index) {
  NodeId candidate;
  int label, parent_h, parent_level;
  Rational m_scale, a_scale;
  NodeId parent_root;
  {
    const StageRecord& p = stages_[parent_index];
    candidate = *p.candidate;
    label = *p.candidate_label;
    parent_h = p.h;
    parent_level = p.level;
    parent_root = p.global_root;
    Thresholds th = thresholds(p.h);
    m_scale = p.m_scale * th.M(label);
    a_scale = p.a_scale * th.m(label);
  }
  StageRecord c;
  c.index = static_cast<int>(stages_.size());
  c.level = parent_level + 1;
  c.global_root = parent_root.concat(candidate);
  c.h = label == 1 ? parent_h : parent_h + 2;
  c.root_parity = static_cast<int>(c.global_root.depth()) % 2;
  c.m_scale = m_scale;
  c.a_scale = a_scale;
  c.parent = parent_index;
  c.adversary = std::make_unique<Adversary>(adversary_cfg_, c.h);

  // The child's adversary valuations start as the global picture restricted to
  // its subtree, rescaled by the accumulated allowance.
  Rational a0 = global_t0_.get(c.global_root) / a_scale;
  Rational a1 = global_t1_.get(c.global_root) / a_scale;
  c.game = GameState::fresh(c.h, c.root_parity, a0, a1);
  std::vector<Assignment> seed;
  auto project = [&](const Valuation& gv, Target tgt) {
    for (const auto& [node, v] : gv.stored()) {
      if (!c.global_root.is_prefix_of(node) || node == c.global_root) continue;
      if (node.depth() > c.global_root.depth() + static_cast<std::size_t>(c.h)) continue;
      seed.push_back({tgt, node.relative_to(c.global_root), v / a_scale});
    }
  };
  project(global_t0_, Target::T0);
  project(global_t1_, Target::T1);
  if (!seed.empty()) c.game = c.game.submit(Mover::A, seed, {}, "");
  c.game = strategy::react(c.game);
  if (auto w = c.game.current_winner()) {
    c.candidate = *w;
    c.candidate_label = c.game.labels().at(*w);
  }

  if (trace_)
    trace_->record(json{{"kind", "stage-spawn"},
                        {"index", c.index},
                        {"parent", parent_index},
                        {"level", c.level},
                        {"root", c.global_root.str()},
                        {"h", c.h},
                        {"parity", c.root_parity},
                        {"m_scale", c.m_scale.str()},
                        {"a_scale", c.a_scale.str()},
                        {"label", label}});
  stages_.push_back(std::move(c));
  stages_[parent_index].active_child = static_cast<int>(stages_.size()) - 1;
}

void Session::spawn_pass() {
  for (;;) {
    auto chain = active_chain();
    int deepest = chain.back();
    const StageRecord& s = stages_[deepest];
    if (!s.candidate || s.level + 1 >= max_stages_) return;
    spawn_child(deepest);
  }
}

void Session::refresh_candidates() {
  for (int idx : active_chain()) {
    StageRecord& s = stages_[idx];
    if (s.candidate &&
        s.game.leaf_status(*s.candidate).kind == LeafStatus::Kind::Discredited) {
      discard_descendants(idx);
      s.candidate.reset();
      s.candidate_label.reset();
    }
    if (!s.candidate) {
      if (auto w = s.game.current_winner()) {
        s.candidate = *w;
        s.candidate_label = s.game.labels().at(*w);
      }
    }
  }
}

bool Session::step() {
  spawn_pass();

  int driver = -1;
  for (int idx : active_chain())
    if (!stages_[idx].adversary_halted) {
      driver = idx;
      break;
    }
  if (driver < 0) return false;

  StageRecord& st = stages_[driver];
  auto local = st.adversary->next(st.game);
  if (!local) {
    st.adversary_halted = true;
    return true;
  }

  // Lift the local batch to global coordinates.
  std::vector<ValueAssign> r0, r1;
  for (const auto& a : *local) {
    ValueAssign va{st.global_root.concat(a.node), a.value * st.a_scale};
    (a.target == Target::T0 ? r0 : r1).push_back(va);
  }

  auto b0 = r0.empty() ? std::make_optional(std::vector<ValueAssign>{})
                       : minimal_raise(global_t0_, r0);
  auto b1 = r1.empty() ? std::make_optional(std::vector<ValueAssign>{})
                       : minimal_raise(global_t1_, r1);
  if (!b0 || !b1) {
    // Locally legal but globally unaffordable (the repair would breach a cap):
    // the batch is rejected whole and no state changes.
    ++rejected_batches_;
    return true;
  }
  if (!b0->empty()) global_t0_ = global_t0_.with_increase(*b0);
  if (!b1->empty()) global_t1_ = global_t1_.with_increase(*b1);

  std::vector<Assignment> combined;
  for (const auto& va : *b0) combined.push_back({Target::T0, va.node, va.value});
  for (const auto& va : *b1) combined.push_back({Target::T1, va.node, va.value});
  if (trace_)
    trace_->record(json{{"kind", "global-move"},
                        {"index", global_move_index_},
                        {"driver", driver},
                        {"assignments", assignments_json(combined)}});
  ++global_move_index_;

  // Project root-outward into the active chain; a discredited candidate
  // discards everything below before deeper stages see the move.
  for (int idx : active_chain()) {
    StageRecord& s = stages_[idx];
    std::vector<Assignment> loc;
    // A global store above this stage's root can implicitly raise the
    // default value of the root itself; re-anchor the local copy first.
    Rational r0 = global_t0_.get(s.global_root) / s.a_scale;
    if (r0 > s.game.t0().get(NodeId{})) loc.push_back({Target::T0, NodeId{}, r0});
    Rational r1 = global_t1_.get(s.global_root) / s.a_scale;
    if (r1 > s.game.t1().get(NodeId{})) loc.push_back({Target::T1, NodeId{}, r1});
    for (const auto& a : combined) {
      if (!s.global_root.is_prefix_of(a.node)) continue;
      if (a.node.depth() > s.global_root.depth() + static_cast<std::size_t>(s.h)) continue;
      loc.push_back({a.target, a.node.relative_to(s.global_root), a.value / s.a_scale});
    }
    if (!loc.empty()) s.game = s.game.submit(Mover::A, loc, {}, "");
    if (s.candidate &&
        s.game.leaf_status(*s.candidate).kind == LeafStatus::Kind::Discredited) {
      discard_descendants(idx);
      s.candidate.reset();
      s.candidate_label.reset();
      break;
    }
  }

  for (int idx : active_chain()) stages_[idx].game = strategy::react(stages_[idx].game);
  refresh_candidates();
  spawn_pass();
  return true;
}

void Session::run() {
  for (int i = 0; i < kStepCap; ++i)
    if (!step()) break;
  if (trace_) {
    BranchReport r = branch_report();
    json labels = json::array(), heights = json::array(), t_along = json::array();
    for (int l : r.stage_labels) labels.push_back(l);
    for (int h : r.stage_heights) heights.push_back(h);
    for (const auto& v : r.t_along) t_along.push_back(v.str());
    trace_->record(json{{"kind", "report"},
                        {"omega", r.omega.str()},
                        {"growth", r.growth.str()},
                        {"allowance", r.allowance.str()},
                        {"a_max", r.a_max_along.str()},
                        {"labels", labels},
                        {"heights", heights},
                        {"t_along", t_along}});
  }
}

Valuation Session::assemble_global_t() const {
  std::map<NodeId, Rational> seen;
  for (const auto& st : stages_) {
    for (const auto& [node, v] : st.game.t().stored()) {
      NodeId gnode = st.global_root.concat(node);
      Rational gv = v * st.m_scale;
      auto [it, inserted] = seen.emplace(gnode, gv);
      if (!inserted && it->second != gv)
        throw std::logic_error("assemble_global_t: stitch mismatch at '" + gnode.str() + "'");
    }
  }
  Valuation g(Role::Full, 0, std::nullopt, Valuation::RootRule::ExactlyOne);
  std::vector<ValueAssign> entries;
  for (const auto& [node, v] : seen) {
    if (node.is_root()) {
      if (v != Rational(1)) throw std::logic_error("assemble_global_t: root is not 1");
      continue;
    }
    entries.push_back({node, v});
  }
  g = g.with_raw(entries);
  if (!g.validate().empty()) throw std::logic_error("assemble_global_t: composite fails validate");
  return g;
}

BranchReport Session::branch_report() const {
  BranchReport r;
  Valuation g = assemble_global_t();
  auto chain = active_chain();
  int deepest = -1;
  for (int idx : chain) {
    const StageRecord& st = stages_[idx];
    r.t_along.push_back(g.get(st.global_root));
    if (!st.candidate) break;
    Thresholds th = thresholds(st.h);
    r.stage_labels.push_back(*st.candidate_label);
    r.stage_heights.push_back(st.h);
    r.allowance *= th.m(*st.candidate_label);
    deepest = idx;
  }
  if (deepest >= 0) {
    const StageRecord& st = stages_[deepest];
    r.omega = st.global_root.concat(*st.candidate);
    r.t_along.push_back(g.get(r.omega));
  }
  r.growth = g.get(r.omega);
  r.a_max_along = Rational(0);
  for (std::size_t d = 0; d <= r.omega.depth(); ++d) {
    NodeId p = r.omega.prefix(d);
    r.a_max_along = std::max({r.a_max_along, global_t0_.get(p), global_t1_.get(p)});
  }
  return r;
}

}  // namespace smg
