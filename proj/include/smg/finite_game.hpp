#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smg/valuation.hpp"

namespace smg {

// Winning / allowance threshold pairs for a tree of odd height h.
struct Thresholds {
  int h;
  Rational M1, m1, M2, m2;

  Rational M(int label) const { return label == 1 ? M1 : M2; }
  Rational m(int label) const { return label == 1 ? m1 : m2; }
};

Thresholds thresholds(int h);

// c(h) = 2^h / (2^h - 1); equals M1(h), asserted in thresholds().
Rational leaf_capital(int h);

enum class Mover { M, A };
enum class Target { T, T0, T1 };

const char* target_name(Target t);
std::optional<Target> target_from_name(const std::string& s);

struct Assignment {
  Target target;
  NodeId node;
  Rational value;
};

struct LabelAttach {
  NodeId leaf;
  int label;  // 1 or 2
};

struct Move {
  Mover mover;
  std::vector<Assignment> assignments;
  std::vector<LabelAttach> labels;
  std::string phase;  // annotation for M's strategy moves
};

struct LeafStatus {
  enum class Kind { Unlabeled, Winning, Pending, Discredited };
  Kind kind = Kind::Unlabeled;
  int label = 0;
};

struct Verdict {
  bool m_wins = false;
  NodeId leaf;
  int label = 0;
};

enum class Phase { Init, Stage1, DoneCaseA, DoneCaseB };

// Full state of one game on a finite tree of odd height h. Immutable snapshot:
// submit() returns the successor state. root_parity is the global depth of
// the local root mod 2; it decides which adversary supermartingale bets where.
class GameState {
 public:
  // Fresh game; adversary roots are capped at 1 (writable in embedded
  // subgames, where their projected local root may start below 1).
  static GameState fresh(int h, int root_parity = 0, Rational a0_root = Rational(1),
                         Rational a1_root = Rational(1));

  int h() const { return h_; }
  int root_parity() const { return root_parity_; }
  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }

  const Valuation& t() const { return t_; }
  const Valuation& t0() const { return t0_; }
  const Valuation& t1() const { return t1_; }
  const Valuation& valuation(Target tgt) const;

  const std::map<NodeId, int>& labels() const { return labels_; }
  const std::vector<Move>& move_log() const { return log_; }

  // The adversary supermartingale that bets at local depth `local_depth`.
  Target bettor_at(std::size_t local_depth) const;

  // Validates and applies one move batch. Throws GameError on any rule break;
  // the state is unchanged in that case.
  GameState submit(Mover mover, std::vector<Assignment> assignments,
                   std::vector<LabelAttach> labels = {}, std::string phase_note = "") const;

  std::optional<GameError> check(Mover mover, const std::vector<Assignment>& assignments,
                                 const std::vector<LabelAttach>& labels = {}) const;

  LeafStatus leaf_status(const NodeId& leaf) const;

  // Leftmost leaf currently Winning, if any.
  std::optional<NodeId> current_winner() const;

  // Called once the driving adversary has halted; M wins iff a winning leaf
  // exists (and, the adversary being silent, stays winning).
  Verdict referee_final() const;

  // Max of the two adversary valuations over the root-to-node path, inclusive.
  Rational path_max(const NodeId& node) const;

  std::vector<NodeId> all_leaves() const;

 private:
  GameState(int h, int root_parity, Valuation t, Valuation t0, Valuation t1);

  int h_;
  int root_parity_;
  Valuation t_, t0_, t1_;
  std::map<NodeId, int> labels_;
  std::vector<Move> log_;
  Phase phase_ = Phase::Init;
};

}  // namespace smg
