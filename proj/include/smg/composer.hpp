#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "smg/adversary.hpp"
#include "smg/finite_game.hpp"
#include "smg/strategy.hpp"

namespace smg {

class TraceWriter;

// One finite game embedded in the infinite tree.
struct StageRecord {
  int index = 0;
  int level = 0;  // depth in the active chain (root stage = 0)
  NodeId global_root;
  int h = 3;
  int root_parity = 0;
  Rational m_scale{1};  // product of M_i over completed ancestor stages
  Rational a_scale{1};  // product of m_i over completed ancestor stages
  GameState game = GameState::fresh(3);

  enum class Status { Active, Discarded };
  Status status = Status::Active;

  std::optional<NodeId> candidate;  // local leaf
  std::optional<int> candidate_label;

  int parent = -1;
  int active_child = -1;
  std::unique_ptr<Adversary> adversary;
  bool adversary_halted = false;
};

struct BranchReport {
  NodeId omega;                   // constructed branch prefix (global path)
  std::vector<Rational> t_along;  // global t at stage roots, then at the deepest candidate
  Rational a_max_along{0};        // max of global t0, t1 over the prefixes of omega
  std::vector<int> stage_labels;  // candidate labels along the active chain
  std::vector<int> stage_heights;
  Rational growth{1};             // global t at the deepest candidate
  Rational allowance{1};          // product of m_i over the chain's labels
};

// Stacks finite games up the infinite tree: per-stage scaling, candidate
// tracking, discard events, and the constructed branch. Deterministic and
// single-threaded.
class Session {
 public:
  Session(int initial_h, AdversaryConfig adversary, int max_stages, TraceWriter* trace = nullptr);

  // One round of progress: spawning, one adversary emission, strategy
  // reactions, status upkeep. Returns false once exhausted.
  bool step();
  void run();

  const std::vector<StageRecord>& stages() const { return stages_; }
  const Valuation& global_t0() const { return global_t0_; }
  const Valuation& global_t1() const { return global_t1_; }

  // Indices of the active chain, root stage first.
  std::vector<int> active_chain() const;

  // Global t stitched from all stages (active and discarded), scaled by each
  // stage's m_scale. Throws std::logic_error if the composite fails validate
  // (engine bug).
  Valuation assemble_global_t() const;

  BranchReport branch_report() const;

  int rejected_batches() const { return rejected_batches_; }

 private:
  void spawn_pass();
  void spawn_child(int parent_index);
  void discard_descendants(int index);
  void refresh_candidates();

  int max_stages_;
  AdversaryConfig adversary_cfg_;
  TraceWriter* trace_;
  std::vector<StageRecord> stages_;
  Valuation global_t0_;
  Valuation global_t1_;
  int global_move_index_ = 0;
  int rejected_batches_ = 0;
};

}  // namespace smg
