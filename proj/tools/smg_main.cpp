#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "smg/composer.hpp"
#include "smg/decomposition.hpp"
#include "smg/strategy.hpp"
#include "smg/trace.hpp"

namespace {

using namespace smg;

struct AdversaryFlags {
  std::string kind = "passive";
  int target_index = 1;
  std::string role = "t1";
  std::string delta = "1/2";
  std::uint64_t seed = 0;
  int budget = 50;

  void attach(CLI::App* cmd) {
    cmd->add_option("--adversary", kind, "passive | case-a | case-b | random | pattern");
    cmd->add_option("--target-index", target_index, "case-a: which spine node A_i to attack");
    cmd->add_option("--role", role, "case-a: which adversary valuation moves (t0 | t1)");
    cmd->add_option("--delta", delta, "raise margin as p/q");
    cmd->add_option("--seed", seed, "random adversary seed");
    cmd->add_option("--budget", budget, "random/pattern move budget");
  }

  std::optional<AdversaryConfig> parse() const {
    AdversaryConfig cfg;
    auto k = AdversaryConfig::kind_from_name(kind);
    if (!k) return std::nullopt;
    cfg.kind = *k;
    cfg.target_index = target_index;
    auto r = target_from_name(role);
    if (!r || *r == Target::T) return std::nullopt;
    cfg.role = *r;
    auto d = Rational::try_parse(delta);
    if (!d) return std::nullopt;
    cfg.delta = *d;
    cfg.seed = seed;
    cfg.budget = budget;
    return cfg;
  }
};

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

// Replays the finished game's move log into the trace, so statuses are
// interleaved move by move.
void emit_game_trace(TraceWriter& tw, const GameState& final_state) {
  GameState s = GameState::fresh(final_state.h(), final_state.root_parity());
  tw.game_header(s);
  int i = 0;
  for (const auto& mv : final_state.move_log()) {
    tw.move(i++, mv);
    s = s.submit(mv.mover, mv.assignments, mv.labels, mv.phase);
    tw.statuses(s);
  }
  tw.verdict(s.referee_final());
}

int cmd_play_finite(int h, const AdversaryFlags& aflags, const std::string& trace_path) {
  if (h < 3 || h % 2 == 0) return usage_error("--h must be odd and >= 3");
  auto cfg = aflags.parse();
  if (!cfg) return usage_error("bad adversary flags");

  GameState s = strategy::react(GameState::fresh(h));
  Adversary adv(*cfg, h);
  while (!adv.halted()) {
    auto batch = adv.next(s);
    if (!batch) break;
    s = s.submit(Mover::A, *batch);
    s = strategy::react(s);
  }
  Verdict v = s.referee_final();

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) return usage_error("cannot open trace file " + trace_path);
    TraceWriter tw(out);
    emit_game_trace(tw, s);
  }

  std::cout << (v.m_wins ? "M wins" : "M does not win");
  if (v.m_wins)
    std::cout << ": leaf " << v.leaf.str() << ", label " << v.label << ", t = "
              << s.t().get(v.leaf).str();
  std::cout << "\n";
  return v.m_wins ? 0 : 1;
}

int cmd_compose(int h, int stages, const AdversaryFlags& aflags, const std::string& trace_path) {
  if (h < 3 || h % 2 == 0) return usage_error("--h must be odd and >= 3");
  if (stages < 0) return usage_error("--stages must be >= 0");
  if (stages == 0) {
    std::cout << "omega: (empty)\ngrowth: 1/1\nallowance: 1/1\na_max: 0/1\n";
    return 0;
  }
  auto cfg = aflags.parse();
  if (!cfg) return usage_error("bad adversary flags");

  std::ofstream out;
  std::optional<TraceWriter> tw;
  if (!trace_path.empty()) {
    out.open(trace_path);
    if (!out) return usage_error("cannot open trace file " + trace_path);
    tw.emplace(out);
  }
  Session session(h, *cfg, stages, tw ? &*tw : nullptr);
  session.run();
  BranchReport r = session.branch_report();

  std::cout << "omega: " << (r.omega.is_root() ? "(empty)" : r.omega.str()) << "\n";
  std::cout << "stages:";
  for (std::size_t i = 0; i < r.stage_heights.size(); ++i)
    std::cout << " h=" << r.stage_heights[i] << "/label=" << r.stage_labels[i];
  std::cout << "\n";
  std::cout << "growth: " << r.growth.str() << " (~" << r.growth.approx() << ")\n";
  std::cout << "allowance: " << r.allowance.str() << " (~" << r.allowance.approx() << ")\n";
  std::cout << "a_max: " << r.a_max_along.str() << " (~" << r.a_max_along.approx() << ")\n";
  if (session.rejected_batches() > 0)
    std::cout << "rejected adversary batches: " << session.rejected_batches() << "\n";

  Rational expected_growth(1);
  for (std::size_t i = 0; i < r.stage_heights.size(); ++i)
    expected_growth *= thresholds(r.stage_heights[i]).M(r.stage_labels[i]);
  bool ok = r.growth >= expected_growth && r.a_max_along <= r.allowance;
  return ok ? 0 : 1;
}

int cmd_decompose(int depth, std::uint64_t seed) {
  if (depth < 1 || depth > 20) return usage_error("--depth must be in [1, 20]");
  std::mt19937_64 rng(seed);
  FiniteMartingale t;
  t.depth = depth;
  t.values[NodeId()] = Rational(1);
  for (int d = 0; d < depth; ++d) {
    for (const auto& node : complete_tree_nodes(d)) {
      if (static_cast<int>(node.depth()) != d) continue;
      Rational v = t.values.at(node);
      std::uniform_int_distribution<int> pick(0, 8);
      Rational left = v * Rational(pick(rng), 4);
      if (left > v + v) left = v + v;
      t.values[node.child(0)] = left;
      t.values[node.child(1)] = v + v - left;
    }
  }
  FiniteMartingale pos = make_positive(t, Rational(1));
  SplitResult sp = split(pos);
  BoundednessReport rep =
      boundedness_check(pos, sp.t0, sp.t1, NodeId(std::string(depth, '0')));

  if (depth <= 4) {
    std::cout << "t (made positive), t0, t1 at each node:\n";
    for (const auto& [node, v] : pos.values)
      std::cout << "  '" << node.str() << "': t=" << v.str() << " t0=" << sp.t0.at(node).str()
                << " t1=" << sp.t1.at(node).str() << "\n";
  }
  std::cout << "max t: " << rep.max_t.str() << ", max t0: " << rep.max_t0.str()
            << ", max t1: " << rep.max_t1.str() << "\n";

  auto parity_ok = [&](const FiniteMartingale& f, int fixed_parity) {
    for (const auto& [node, v] : f.values) {
      if (static_cast<int>(node.depth()) >= f.depth) continue;
      if (static_cast<int>(node.depth()) % 2 != fixed_parity) continue;
      if (f.at(node.child(0)) != f.at(node.child(1))) return false;
    }
    return true;
  };
  bool ok = sp.t0.valid() && sp.t1.valid() && parity_ok(sp.t0, 0) && parity_ok(sp.t1, 1) &&
            rep.product_bound_holds;
  for (const auto& [node, v] : pos.values)
    if (sp.t0.at(node) * sp.t1.at(node) != v) ok = false;
  std::cout << (ok ? "identities hold\n" : "identities FAIL\n");
  return ok ? 0 : 1;
}

int cmd_pattern_seq(int n) {
  if (n < 1) return usage_error("--n must be >= 1");
  for (int i = 1; i <= n; ++i) std::cout << no_shortcut_sequence(i);
  std::cout << "\n";
  return 0;
}

int cmd_verify(const std::string& path) {
  VerifyResult r = verify_trace_file(path);
  if (r.exit_code == 0) {
    std::cout << "ok\n";
  } else {
    std::cerr << "record " << r.record_index << ": " << r.message << "\n";
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supermartingale splitting game runner"};
  app.require_subcommand(1);
  // keep -h free for the tree-height option on subcommands
  app.set_help_flag("--help", "print help");

  int h = 3, stages = 4, depth = 6, n = 16;
  std::uint64_t dseed = 0;
  std::string trace_path, verify_path;
  AdversaryFlags play_adv, compose_adv;

  auto* play = app.add_subcommand("play-finite", "run one finite game to the verdict");
  play->set_help_flag("--help", "print help");
  play->add_option("--h", h, "tree height (odd, >= 3)");
  play_adv.attach(play);
  play->add_option("--trace", trace_path, "write a JSONL trace here");

  auto* compose = app.add_subcommand("compose", "run a composed session of stacked games");
  compose->set_help_flag("--help", "print help");
  compose->add_option("--h", h, "initial tree height (odd, >= 3)");
  compose->add_option("--stages", stages, "maximum number of stacked stages");
  compose_adv.attach(compose);
  compose->add_option("--trace", trace_path, "write a JSONL trace here");

  auto* decompose = app.add_subcommand("decompose", "split a random positive martingale");
  decompose->add_option("--depth", depth, "tree depth");
  decompose->add_option("--seed", dseed, "generator seed");

  auto* pattern = app.add_subcommand("pattern-seq", "print the no-shortcut leaf pattern");
  pattern->add_option("--n", n, "how many terms");

  auto* verify = app.add_subcommand("verify", "replay-check a JSONL trace");
  verify->add_option("trace", verify_path, "trace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (play->parsed()) return cmd_play_finite(h, play_adv, trace_path);
    if (compose->parsed()) return cmd_compose(h, stages, compose_adv, trace_path);
    if (decompose->parsed()) return cmd_decompose(depth, dseed);
    if (pattern->parsed()) return cmd_pattern_seq(n);
    if (verify->parsed()) return cmd_verify(verify_path);
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
